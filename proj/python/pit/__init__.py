"""Partial independent transversals in multipartite graphs."""

from ._core import (
    BudgetExhausted,
    ClaimRefuted,
    Graph,
    PitError,
    bounds_summary,
    build,
    certify,
    check_structure_lemmas,
    claim_of,
    extract_imc,
    full_it_threshold,
    has_it_of_size,
    max_partial_it,
    no_it_certificate,
)

__all__ = [
    "BudgetExhausted",
    "ClaimRefuted",
    "Graph",
    "PitError",
    "bounds_summary",
    "build",
    "certify",
    "check_structure_lemmas",
    "claim_of",
    "extract_imc",
    "full_it_threshold",
    "has_it_of_size",
    "max_partial_it",
    "no_it_certificate",
]
