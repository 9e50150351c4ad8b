#include "pit/bounds.hpp"

#include <algorithm>
#include <optional>

namespace pit::bounds {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::hypothesis_not_met, what);
}

bool odd_q(const Params& p) { return p.q >= 3 && p.q % 2 == 1; }

// 2*delta*(1 - a/b)
Rat twice_delta_times_one_minus(std::int64_t delta, const Rat& frac) {
  return Rat(2 * delta) * (Rat(1) - frac);
}

}  // namespace

Params decompose(std::int64_t r, std::int64_t d, std::int64_t delta) {
  if (r < 2 || d < 0 || d >= r || delta < 0) {
    throw Error(ErrorCode::invalid_argument,
                "need r >= 2, 0 <= d < r and delta >= 0 (got r=" + std::to_string(r) +
                    ", d=" + std::to_string(d) + ", delta=" + std::to_string(delta) + ")");
  }
  return Params{r, d, delta, r / (d + 1), r % (d + 1)};
}

std::int64_t full_it_threshold(std::int64_t r, std::int64_t delta) {
  if (r < 2 || delta < 1) {
    throw Error(ErrorCode::invalid_argument, "full_it_threshold needs r >= 2 and delta >= 1");
  }
  const std::int64_t base = r % 2 == 0 ? r : r - 1;
  return twice_delta_times_one_minus(delta, Rat(1, base)).floor();
}

Rat defect_averaging_bound(const Params& p) {
  return twice_delta_times_one_minus(p.delta, Rat(p.d + 1, p.r));
}

Rat general_q_bound(const Params& p) {
  return max(twice_delta_times_one_minus(p.delta, Rat(4 * p.d + 5, 4 * p.r)),
             twice_delta_times_one_minus(p.delta, Rat(1, p.q)));
}

Rat odd_q_divisible_bound(const Params& p) {
  require(p.k == 0, "needs r = q(d+1), i.e. k = 0");
  require(odd_q(p), "needs odd q >= 3");
  return max(twice_delta_times_one_minus(p.delta, Rat(4 * p.d + 5, 4 * p.r)),
             twice_delta_times_one_minus(p.delta, Rat(p.q, p.q * p.q - 1)));
}

Rat odd_q_bound(const Params& p) {
  require(odd_q(p), "needs odd q >= 3");
  return max(twice_delta_times_one_minus(p.delta, Rat(6 * p.d + 7, 6 * p.r)),
             twice_delta_times_one_minus(p.delta, Rat(1, p.q - 1)));
}

std::int64_t even_q_exact_value(const Params& p) {
  require(p.q % 2 == 0, "needs even q");
  require(p.q >= 4 * p.k, "needs q >= 4k");
  return twice_delta_times_one_minus(p.delta, Rat(1, p.q)).floor();
}

std::int64_t odd_q_exact_value(const Params& p) {
  require(p.q % 2 == 1, "needs odd q");
  require(p.q >= 6 * p.d + 6 * p.k + 7, "needs q >= 6d + 6k + 7");
  return twice_delta_times_one_minus(p.delta, Rat(1, p.q - 1)).floor();
}

std::int64_t six_partite_exact_value(const Params& p) {
  require(p.r == 6 && p.d == 1, "needs r = 6 and d = 1");
  return (Rat(5, 4) * Rat(p.delta)).floor();
}

bool main_construction_valid(std::int64_t q, std::int64_t i, std::int64_t d, std::int64_t k) {
  if (q < 2 || q % 2 != 0 || d < 0) return false;
  if (i < 1 || i > d + 2) return false;
  if (k < 0 || k >= d + i) return false;
  return i == 1 || (d + i) % (i - 1) == 0;
}

std::int64_t main_construction_value(std::int64_t q, std::int64_t i, std::int64_t d,
                                     std::int64_t k, std::int64_t delta) {
  require(main_construction_valid(q, i, d, k),
          "needs even q >= 2, 1 <= i <= d+2, 0 <= k < d+i and i = 1 or (i-1) | (d+i)");
  return twice_delta_times_one_minus(delta, Rat(1, q)).floor() +
         Rat((i - 1) * delta, (d + 1) * q).floor();
}

std::int64_t convert(const Rat& c, Conversion direction, std::int64_t value, std::int64_t r) {
  if (c < Rat(1)) throw Error(ErrorCode::invalid_argument, "scale c must be >= 1");
  switch (direction) {
    case Conversion::n_from_delta:
      return (c * Rat(value)).floor();
    case Conversion::delta_from_n:
      return (Rat(value) / c).ceil();
    case Conversion::f_from_n:
      if (r < 2) throw Error(ErrorCode::invalid_argument, "f-value needs r >= 2");
      return (r - 1) * value - (Rat(value) / c).ceil();
  }
  throw Error(ErrorCode::invalid_argument, "unknown conversion");
}

Rat extension_threshold(std::int64_t r, std::int64_t d, std::int64_t k_it) {
  if (d < 0 || d >= r || k_it < 0 || k_it >= r - d) {
    throw Error(ErrorCode::invalid_argument, "extension threshold needs 0 <= k < r - d");
  }
  const Rat deficit = Rat(d + 1) - Rat(k_it, 2);
  return Rat(2) * (Rat(1) - deficit / Rat(r - k_it));
}

namespace {

struct Candidate {
  std::int64_t value;
  std::string source;
};

// Collect the sources attaining the best value.
void settle(const std::vector<Candidate>& cands, bool want_max, std::int64_t& value,
            std::vector<std::string>& sources) {
  value = cands.front().value;
  for (const Candidate& c : cands) {
    value = want_max ? std::max(value, c.value) : std::min(value, c.value);
  }
  sources.clear();
  for (const Candidate& c : cands) {
    if (c.value == value &&
        std::find(sources.begin(), sources.end(), c.source) == sources.end()) {
      sources.push_back(c.source);
    }
  }
}

// Lower bounds from direct constructions at defect d (no complete-layer chain).
std::vector<Candidate> direct_lower(std::int64_t r, std::int64_t d, std::int64_t delta) {
  std::vector<Candidate> out;
  if (d == 0) out.push_back({full_it_threshold(r, delta), "full-it-threshold"});
  if (2 * (d + 1) <= r) out.push_back({delta, "bipartite-blocks"});
  for (std::int64_t i = 1; i <= d + 2; ++i) {
    const std::int64_t q = r / (d + i);
    const std::int64_t k = r % (d + i);
    if (main_construction_valid(q, i, d, k)) {
      out.push_back({main_construction_value(q, i, d, k, delta), "blowup-rows"});
    } else if (q >= 3 && q % 2 == 1 && (i == 1 || (d + i) % (i - 1) == 0)) {
      // Same row/spine chain over the odd-q full-IT base.
      out.push_back({full_it_threshold(q, delta) + Rat((i - 1) * delta, (d + 1) * q).floor(),
                     "odd-base-rows"});
    }
  }
  return out;
}

}  // namespace

BoundReport summary(std::int64_t r, std::int64_t d, std::int64_t delta) {
  const Params p = decompose(r, d, delta);
  if (delta < 1) throw Error(ErrorCode::invalid_argument, "summary needs delta >= 1");
  BoundReport rep;
  rep.params = p;

  // Lower: walk the defect down from r-1, where adding one complete r-partite
  // layer of floor(delta/(r-1)) per class lowers the defect by one.
  const std::int64_t layer = delta / (r - 1);
  std::int64_t chain = 0;
  std::vector<std::string> chain_sources{"trivial"};
  for (std::int64_t dd = r - 1; dd >= d; --dd) {
    std::vector<Candidate> cands = direct_lower(r, dd, delta);
    if (dd == r - 1) {
      cands.push_back({0, "trivial"});
    } else {
      cands.push_back({chain + layer, "complete-layer-chain"});
    }
    settle(cands, true, chain, chain_sources);
  }
  rep.lower = chain;
  rep.lower_sources = chain_sources;

  std::vector<Candidate> upper;
  if (d == 0) upper.push_back({full_it_threshold(r, delta), "full-it-threshold"});
  upper.push_back({defect_averaging_bound(p).floor(), "defect-averaging"});
  upper.push_back({general_q_bound(p).floor(), "general-q"});
  if (p.k == 0 && odd_q(p)) upper.push_back({odd_q_divisible_bound(p).floor(), "odd-q-divisible"});
  if (odd_q(p)) upper.push_back({odd_q_bound(p).floor(), "odd-q"});
  settle(upper, false, rep.upper, rep.upper_sources);

  rep.exact = rep.lower == rep.upper;
  if (d == 0) rep.closed_forms.push_back("full-it-threshold");
  if (p.q % 2 == 0 && p.q >= 4 * p.k) rep.closed_forms.push_back("even-q");
  if (p.q % 2 == 1 && p.q >= 6 * p.d + 6 * p.k + 7) rep.closed_forms.push_back("odd-q");
  if (r == 6 && d == 1) rep.closed_forms.push_back("six-partite");
  return rep;
}

}  // namespace pit::bounds
