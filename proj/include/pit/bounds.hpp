#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pit/rational.hpp"

namespace pit::bounds {

// r = q(d+1) + k with 0 <= k <= d.
struct Params {
  std::int64_t r = 0;
  std::int64_t d = 0;
  std::int64_t delta = 0;
  std::int64_t q = 0;
  std::int64_t k = 0;
};

// Requires r >= 2, 0 <= d < r, delta >= 0.
Params decompose(std::int64_t r, std::int64_t d, std::int64_t delta = 0);

// Largest class size admitting an r-partite, max-degree-delta graph with no
// full independent transversal: floor(2*delta*(1-1/r)) for even r and
// floor(2*delta*(1-1/(r-1))) for odd r.
std::int64_t full_it_threshold(std::int64_t r, std::int64_t delta);

// Upper bounds on the largest class size with no (r-d)-IT. Each returns the
// exact threshold value; the integer bound is its floor.

// 2*delta*(1 - (d+1)/r).
Rat defect_averaging_bound(const Params& p);
// max{2*delta*(1 - (4d+5)/(4r)), 2*delta*(1 - 1/q)}.
Rat general_q_bound(const Params& p);
// max{2*delta*(1 - (4d+5)/(4r)), 2*delta*(1 - q/(q^2-1))}; needs k = 0 and
// odd q >= 3.
Rat odd_q_divisible_bound(const Params& p);
// max{2*delta*(1 - (6d+7)/(6r)), 2*delta*(1 - 1/(q-1))}; needs odd q >= 3.
Rat odd_q_bound(const Params& p);

// Exact values where the upper and lower bounds meet. Each gate is a hard
// error (hypothesis_not_met) rather than a fallback.
//   even q with q >= 4k:          floor(2*delta*(1 - 1/q))
//   odd q with q >= 6d + 6k + 7:  floor(2*delta*(1 - 1/(q-1)))
//   r = 6, d = 1:                 floor(5*delta/4)
std::int64_t even_q_exact_value(const Params& p);
std::int64_t odd_q_exact_value(const Params& p);
std::int64_t six_partite_exact_value(const Params& p);

// Lower bound carried by the blow-up construction family:
// floor(2*delta*(1-1/q)) + floor((i-1)*delta/((d+1)q)) for r = q(d+i) + k,
// even q >= 2, 1 <= i <= d+2, 0 <= k < d+i and i = 1 or (i-1) | (d+i).
std::int64_t main_construction_value(std::int64_t q, std::int64_t i, std::int64_t d,
                                     std::int64_t k, std::int64_t delta);
bool main_construction_valid(std::int64_t q, std::int64_t i, std::int64_t d, std::int64_t k);

// Conversions between the three extremal functions for a scale c >= 1:
// n-value floor(c*delta), delta-value ceil(n/c), f-value (r-1)n - ceil(n/c).
enum class Conversion { n_from_delta, delta_from_n, f_from_n };
std::int64_t convert(const Rat& c, Conversion direction, std::int64_t value,
                     std::int64_t r = 0);

// Per-unit-delta class size above which a given k-IT extends to an (r-d)-IT:
// 2*(1 - (d + 1 - k/2)/(r - k)). Requires 0 <= k < r - d.
Rat extension_threshold(std::int64_t r, std::int64_t d, std::int64_t k_it);

struct BoundReport {
  Params params;
  std::int64_t lower = 0;
  std::vector<std::string> lower_sources;
  std::int64_t upper = 0;
  std::vector<std::string> upper_sources;
  bool exact = false;                 // lower == upper
  std::vector<std::string> closed_forms;  // exact-value results whose gates hold
};

// Every applicable lower and upper bound, floored; ties list every source.
BoundReport summary(std::int64_t r, std::int64_t d, std::int64_t delta);

}  // namespace pit::bounds
