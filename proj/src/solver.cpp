#include "pit/solver.hpp"

#include <algorithm>
#include <numeric>

namespace pit {

Transversal::Transversal(std::vector<VertexRef> picks) : picks_(std::move(picks)) {
  std::sort(picks_.begin(), picks_.end());
  for (std::size_t i = 1; i < picks_.size(); ++i) {
    if (picks_[i].part == picks_[i - 1].part) {
      throw Error(ErrorCode::invalid_argument,
                  "transversal has two picks in class " + std::to_string(picks_[i].part));
    }
  }
}

std::optional<VertexRef> Transversal::pick_in(std::size_t part) const {
  auto it = std::lower_bound(picks_.begin(), picks_.end(), VertexRef{part, 0});
  if (it != picks_.end() && it->part == part) return *it;
  return std::nullopt;
}

ClassSet Transversal::support() const {
  std::vector<std::size_t> parts;
  for (const VertexRef& v : picks_) parts.push_back(v.part);
  return ClassSet(std::move(parts));
}

bool is_partial_it(const MultipartiteGraph& g, const Transversal& t) {
  for (const VertexRef& v : t.picks()) {
    if (!g.valid(v)) return false;
  }
  return is_independent(g, t.vertices());
}

std::string to_string(const Transversal& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += to_string(t.picks()[i]);
  }
  return out + "}";
}

namespace {

std::vector<Bits> class_masks(const MultipartiteGraph& g, const std::vector<std::size_t>& classes) {
  std::vector<Bits> masks;
  masks.reserve(classes.size());
  for (std::size_t p : classes) masks.push_back(g.class_bits(p));
  return masks;
}

Transversal to_transversal(const MultipartiteGraph& g, const std::vector<std::size_t>& ids) {
  std::vector<VertexRef> picks;
  picks.reserve(ids.size());
  for (std::size_t id : ids) picks.push_back(g.ref(id));
  return Transversal(std::move(picks));
}

// Branch and bound for the size of a maximum partial IT. Classes are visited
// by ascending size; the bound counts remaining classes that still have a
// vertex compatible with the current picks.
class MaxSizeSearch {
 public:
  MaxSizeSearch(const MultipartiteGraph& g, Budget& budget) : g_(g), budget_(budget) {
    order_.resize(g.num_classes());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return g.class_size(a) < g.class_size(b);
    });
    masks_ = class_masks(g, order_);
    for (std::size_t p : order_) ceiling_ += g.class_size(p) > 0 ? 1 : 0;
  }

  std::size_t run() {
    Bits avail(g_.num_vertices());
    avail.set();
    recurse(0, avail, 0);
    return best_;
  }

 private:
  void recurse(std::size_t pos, const Bits& avail, std::size_t picks) {
    budget_.tick();
    best_ = std::max(best_, picks);
    if (best_ == ceiling_ || pos == order_.size()) return;
    std::size_t possible = 0;
    for (std::size_t k = pos; k < order_.size(); ++k) {
      if (avail.intersects(masks_[k])) ++possible;
    }
    if (picks + possible <= best_) return;

    const Bits cand = avail & masks_[pos];
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      recurse(pos + 1, avail - g_.neighbour_bits(v), picks + 1);
      if (best_ == ceiling_) return;
    }
    recurse(pos + 1, avail, picks);
  }

  const MultipartiteGraph& g_;
  Budget& budget_;
  std::vector<std::size_t> order_;
  std::vector<Bits> masks_;
  std::size_t best_ = 0;
  std::size_t ceiling_ = 0;
};

// Lexicographic search for the first transversal of exactly `target` picks.
// Classes in ascending index, vertices ascending, "pick" before "skip"; the
// first hit is the lexicographically least sorted pick list.
class LexWitnessSearch {
 public:
  LexWitnessSearch(const MultipartiteGraph& g, std::size_t target, Budget& budget)
      : g_(g), target_(target), budget_(budget) {
    classes_.resize(g.num_classes());
    std::iota(classes_.begin(), classes_.end(), std::size_t{0});
    masks_ = class_masks(g, classes_);
  }

  std::optional<Transversal> run() {
    Bits avail(g_.num_vertices());
    avail.set();
    if (recurse(0, avail)) return to_transversal(g_, chosen_);
    return std::nullopt;
  }

 private:
  bool recurse(std::size_t pos, const Bits& avail) {
    budget_.tick();
    if (chosen_.size() == target_) return true;
    std::size_t possible = 0;
    for (std::size_t k = pos; k < classes_.size(); ++k) {
      if (avail.intersects(masks_[k])) ++possible;
    }
    if (chosen_.size() + possible < target_) return false;

    const Bits cand = avail & masks_[pos];
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      chosen_.push_back(v);
      if (recurse(pos + 1, avail - g_.neighbour_bits(v))) return true;
      chosen_.pop_back();
    }
    return recurse(pos + 1, avail);
  }

  const MultipartiteGraph& g_;
  std::size_t target_;
  Budget& budget_;
  std::vector<std::size_t> classes_;
  std::vector<Bits> masks_;
  std::vector<std::size_t> chosen_;
};

class ConstrainedSearch {
 public:
  ConstrainedSearch(const MultipartiteGraph& g, const TransversalQuery& q, Budget& budget)
      : g_(g), q_(q), budget_(budget), masks_(class_masks(g, q.classes)) {
    if (q.objective) objective_mask_ = g.neighbour_bits(*q.objective);
  }

  std::optional<TransversalHit> run() {
    Bits avail = q_.allowed;
    avail.resize(g_.num_vertices());
    recurse(0, avail, 0);
    if (!found_) return std::nullopt;
    return TransversalHit{to_transversal(g_, best_picks_), best_};
  }

  // Collect up to `limit` transversals, ignoring the objective.
  std::vector<Transversal> collect(std::size_t limit) {
    limit_ = limit;
    Bits avail = q_.allowed;
    avail.resize(g_.num_vertices());
    collect_rec(0, avail);
    return std::move(all_);
  }

 private:
  bool viable(std::size_t pos, const Bits& avail) const {
    for (std::size_t k = pos; k < masks_.size(); ++k) {
      if (!avail.intersects(masks_[k])) return false;
    }
    return true;
  }

  void recurse(std::size_t pos, const Bits& avail, std::size_t count) {
    budget_.tick();
    if (found_ && count >= best_) return;
    if (pos == masks_.size()) {
      found_ = true;
      best_ = count;
      best_picks_ = chosen_;
      if (best_ <= q_.stop_at) done_ = true;
      return;
    }
    if (!viable(pos, avail)) return;
    const Bits cand = avail & masks_[pos];
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      const std::size_t add = (q_.objective && objective_mask_[v]) ? 1 : 0;
      chosen_.push_back(v);
      recurse(pos + 1, avail - g_.neighbour_bits(v), count + add);
      chosen_.pop_back();
      if (done_) return;
    }
  }

  void collect_rec(std::size_t pos, const Bits& avail) {
    budget_.tick();
    if (all_.size() >= limit_) return;
    if (pos == masks_.size()) {
      all_.push_back(to_transversal(g_, chosen_));
      return;
    }
    if (!viable(pos, avail)) return;
    const Bits cand = avail & masks_[pos];
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      chosen_.push_back(v);
      collect_rec(pos + 1, avail - g_.neighbour_bits(v));
      chosen_.pop_back();
      if (all_.size() >= limit_) return;
    }
  }

  const MultipartiteGraph& g_;
  const TransversalQuery& q_;
  Budget& budget_;
  std::vector<Bits> masks_;
  Bits objective_mask_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_picks_;
  std::size_t best_ = 0;
  bool found_ = false;
  bool done_ = false;
  std::size_t limit_ = 0;
  std::vector<Transversal> all_;
};

// Advances `idx` (strictly increasing indices into [0, n)) to the next
// combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

SolveResult max_partial_it(const MultipartiteGraph& g, std::uint64_t budget) {
  Budget counter(budget);
  const std::size_t size = MaxSizeSearch(g, counter).run();
  auto witness = LexWitnessSearch(g, size, counter).run();
  if (!witness) throw InternalAssertion("no witness for computed maximum");
  return SolveResult{size, std::move(*witness), true, counter.used()};
}

std::optional<Transversal> has_it_of_size(const MultipartiteGraph& g, std::size_t s,
                                          std::uint64_t budget) {
  Budget counter(budget);
  return LexWitnessSearch(g, s, counter).run();
}

std::optional<Transversal> avoidance_it(const MultipartiteGraph& g, const ClassSet& u,
                                        const VertexSet& forbidden, std::uint64_t budget) {
  for (std::size_t p : u) {
    if (p >= g.num_classes()) {
      throw GraphError(ErrorCode::vertex_out_of_range,
                       "class index out of range: " + std::to_string(p));
    }
  }
  Budget counter(budget);
  TransversalQuery q;
  q.classes = u.items();
  q.allowed = Bits(g.num_vertices());
  q.allowed.set();
  q.allowed -= to_bits(g, forbidden);
  auto hit = min_constrained_transversal(g, q, counter);
  if (!hit) return std::nullopt;
  return std::move(hit->transversal);
}

std::optional<TransversalHit> min_constrained_transversal(const MultipartiteGraph& g,
                                                          const TransversalQuery& query,
                                                          Budget& budget) {
  return ConstrainedSearch(g, query, budget).run();
}

std::vector<Transversal> enumerate_transversals(const MultipartiteGraph& g,
                                                const std::vector<std::size_t>& classes,
                                                const Bits& allowed, std::size_t limit,
                                                Budget& budget) {
  TransversalQuery q;
  q.classes = classes;
  q.allowed = allowed;
  return ConstrainedSearch(g, q, budget).collect(limit);
}

CertificateVerdict verify_no_it_certificate(const MultipartiteGraph& g,
                                            const NoItCertificate& cert) {
  if (cert.edges.empty()) return {false, "Z is empty"};
  if (cert.edges.size() + 1 > cert.classes.size()) return {false, "|Z| > |S| - 1"};
  for (std::size_t p : cert.classes) {
    if (p >= g.num_classes()) return {false, "class out of range"};
  }
  Bits endpoints = g.empty_bits();
  for (const Edge& e : cert.edges) {
    if (!g.valid(e.a) || !g.valid(e.b) || !g.adjacent(e.a, e.b)) {
      return {false, "Z contains a non-edge " + to_string(e.a) + "-" + to_string(e.b)};
    }
    if (!cert.classes.contains(e.a.part) || !cert.classes.contains(e.b.part)) {
      return {false, "Z has an edge outside G_S"};
    }
    endpoints.set(g.id(e.a));
    endpoints.set(g.id(e.b));
  }
  for (std::size_t p : cert.classes) {
    if (!endpoints.intersects(g.class_bits(p))) {
      return {false, "Z misses class " + std::to_string(p)};
    }
    for (std::size_t v = g.class_begin(p); v < g.class_end(p); ++v) {
      if (!endpoints[v] && !g.neighbour_bits(v).intersects(endpoints)) {
        return {false, "V(Z) does not dominate " + to_string(g.ref(v))};
      }
    }
  }
  return {true, "ok"};
}

std::optional<NoItCertificate> no_it_certificate_brute(const MultipartiteGraph& g,
                                                       std::uint64_t budget) {
  const std::size_t r = g.num_classes();
  for (std::size_t p = 0; p < r; ++p) {
    if (g.class_size(p) == 0) {
      throw Error(ErrorCode::precondition_failed, "graph has an empty class");
    }
  }
  if (has_it_of_size(g, r, budget)) {
    throw Error(ErrorCode::precondition_failed, "graph has a full independent transversal");
  }
  Budget counter(budget);
  const std::vector<Edge> all_edges = g.edges();
  for (std::size_t s = 2; s <= r; ++s) {
    std::vector<std::size_t> cls = first_combination(s);
    do {
      const ClassSet classes(cls);
      std::vector<Edge> edges_s;
      for (const Edge& e : all_edges) {
        if (classes.contains(e.a.part) && classes.contains(e.b.part)) edges_s.push_back(e);
      }
      for (std::size_t z = (s + 1) / 2; z + 1 <= s && z <= edges_s.size(); ++z) {
        std::vector<std::size_t> pick = first_combination(z);
        do {
          counter.tick();
          NoItCertificate cert{classes, {}};
          for (std::size_t i : pick) cert.edges.push_back(edges_s[i]);
          if (verify_no_it_certificate(g, cert).valid) return cert;
        } while (next_combination(pick, edges_s.size()));
      }
    } while (next_combination(cls, r));
  }
  return std::nullopt;
}

}  // namespace pit
