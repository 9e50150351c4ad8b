#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pit/error.hpp"
#include "pit/graph.hpp"
#include "pit/transversal.hpp"

namespace pit {

struct SolveResult {
  std::size_t size = 0;
  Transversal witness;       // lexicographically least optimum
  bool exhaustive = false;   // search ran to completion
  std::uint64_t nodes = 0;
};

// Maximum partial independent transversal. Exhaustive branch and bound;
// throws BudgetExhausted when the node budget runs out.
SolveResult max_partial_it(const MultipartiteGraph& g, std::uint64_t budget = kDefaultBudget);

// First (lexicographically least) independent transversal of exactly `s`
// classes, or nothing if the largest one is smaller.
std::optional<Transversal> has_it_of_size(const MultipartiteGraph& g, std::size_t s,
                                          std::uint64_t budget = kDefaultBudget);

// Full IT of G[u] (one vertex in every class of u) avoiding `forbidden`.
std::optional<Transversal> avoidance_it(const MultipartiteGraph& g, const ClassSet& u,
                                        const VertexSet& forbidden,
                                        std::uint64_t budget = kDefaultBudget);

// (S, Z): classes S and edges Z of G_S with V(Z) dominating G_S,
// |Z| <= |S| - 1 and Z meeting every class of S.
struct NoItCertificate {
  ClassSet classes;
  std::vector<Edge> edges;
};

struct CertificateVerdict {
  bool valid = false;
  std::string reason;
};

CertificateVerdict verify_no_it_certificate(const MultipartiteGraph& g,
                                            const NoItCertificate& cert);

// Smallest |S| first, then smallest |Z|, both in lexicographic order.
// Throws precondition_failed if g has a full IT or an empty class.
std::optional<NoItCertificate> no_it_certificate_brute(const MultipartiteGraph& g,
                                                       std::uint64_t budget = kDefaultBudget);

// Constrained transversal search used by the feasible-pair engine: exactly one
// pick in each of `classes`, picks restricted to `allowed`, optionally
// minimising the number of picks adjacent to `objective`. The search stops at
// the first transversal whose objective count is <= `stop_at`. Among
// minimisers the lexicographically first is returned.
struct TransversalQuery {
  std::vector<std::size_t> classes;
  Bits allowed;
  std::optional<std::size_t> objective;  // global vertex id
  std::size_t stop_at = 0;
};

struct TransversalHit {
  Transversal transversal;
  std::size_t objective_count = 0;
};

std::optional<TransversalHit> min_constrained_transversal(const MultipartiteGraph& g,
                                                          const TransversalQuery& query,
                                                          Budget& budget);

// Every full IT of G[classes] restricted to `allowed`, lexicographic order,
// at most `limit` of them.
std::vector<Transversal> enumerate_transversals(const MultipartiteGraph& g,
                                                const std::vector<std::size_t>& classes,
                                                const Bits& allowed, std::size_t limit,
                                                Budget& budget);

}  // namespace pit
