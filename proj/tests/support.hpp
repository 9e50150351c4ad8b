#pragma once

// Reference implementations and instance generators shared by the tests.
// The oracles here deliberately avoid the library's search code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pit/graph.hpp"
#include "pit/solver.hpp"
#include "pit/transversal.hpp"

namespace pit::testing {

inline MultipartiteGraph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) edges.emplace_back(VertexRef{0, i}, VertexRef{1, j});
  }
  return MultipartiteGraph({a, b}, edges);
}

// `copies` vertex-disjoint K_{a,a}, classes (0,1), (2,3), ...
inline MultipartiteGraph disjoint_kaa(std::size_t copies, std::size_t a) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < a; ++j) {
        edges.emplace_back(VertexRef{2 * c, i}, VertexRef{2 * c + 1, j});
      }
    }
  }
  return MultipartiteGraph(std::vector<std::size_t>(2 * copies, a), edges);
}

// Random multipartite graph: candidate cross-class pairs are tried in random
// order and kept with probability `density` while both endpoints stay below
// `max_deg`.
inline MultipartiteGraph random_graph(std::mt19937_64& rng, std::vector<std::size_t> sizes,
                                      std::size_t max_deg, double density) {
  std::vector<std::pair<VertexRef, VertexRef>> pairs;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    for (std::size_t q = p + 1; q < sizes.size(); ++q) {
      for (std::size_t i = 0; i < sizes[p]; ++i) {
        for (std::size_t j = 0; j < sizes[q]; ++j) pairs.emplace_back(VertexRef{p, i}, VertexRef{q, j});
      }
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<std::size_t>> deg(sizes.size());
  for (std::size_t p = 0; p < sizes.size(); ++p) deg[p].assign(sizes[p], 0);
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) {
    if (deg[u.part][u.index] >= max_deg || deg[v.part][v.index] >= max_deg) continue;
    if (!keep(rng)) continue;
    ++deg[u.part][u.index];
    ++deg[v.part][v.index];
    edges.emplace_back(u, v);
  }
  return MultipartiteGraph(std::move(sizes), edges);
}

inline std::vector<std::size_t> random_sizes(std::mt19937_64& rng, std::size_t r, std::size_t lo,
                                             std::size_t hi) {
  std::uniform_int_distribution<std::size_t> pick(lo, hi);
  std::vector<std::size_t> out(r);
  for (auto& s : out) s = pick(rng);
  return out;
}

inline std::vector<VertexRef> all_vertices(const MultipartiteGraph& g) {
  std::vector<VertexRef> out;
  for (std::size_t p = 0; p < g.num_classes(); ++p) {
    for (std::size_t i = 0; i < g.class_size(p); ++i) out.push_back({p, i});
  }
  return out;
}

inline bool pairwise_independent(const MultipartiteGraph& g, const std::vector<VertexRef>& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (s[a].part != s[b].part && g.adjacent(s[a], s[b])) return false;
    }
  }
  return true;
}

// Largest partial IT by enumerating every vertex subset. Only for tiny graphs.
inline std::size_t naive_max_partial_it(const MultipartiteGraph& g) {
  const auto verts = all_vertices(g);
  const std::size_t nv = verts.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nv); ++mask) {
    std::vector<VertexRef> pick;
    std::set<std::size_t> parts;
    bool ok = true;
    for (std::size_t b = 0; b < nv && ok; ++b) {
      if (!(mask >> b & 1)) continue;
      if (!parts.insert(verts[b].part).second) ok = false;
      pick.push_back(verts[b]);
    }
    if (ok && pick.size() > best && pairwise_independent(g, pick)) best = pick.size();
  }
  return best;
}

// Exhaustive IT test over the classes in `classes` with a per-vertex filter.
template <class Allowed>
bool naive_has_it(const MultipartiteGraph& g, const std::vector<std::size_t>& classes,
                  Allowed allowed, std::vector<VertexRef>& chosen, std::size_t at = 0) {
  if (at == classes.size()) return true;
  for (std::size_t i = 0; i < g.class_size(classes[at]); ++i) {
    const VertexRef v{classes[at], i};
    if (!allowed(v)) continue;
    bool free = true;
    for (const auto& u : chosen) free = free && !g.adjacent(u, v);
    if (!free) continue;
    chosen.push_back(v);
    if (naive_has_it(g, classes, allowed, chosen, at + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

inline bool naive_has_full_it(const MultipartiteGraph& g) {
  std::vector<std::size_t> classes(g.num_classes());
  for (std::size_t p = 0; p < classes.size(); ++p) classes[p] = p;
  std::vector<VertexRef> chosen;
  return naive_has_it(g, classes, [](const VertexRef&) { return true; }, chosen);
}

// Instances with nonempty classes, at most `max_vertices` vertices and no
// full IT. Mixes dense random graphs with disjoint K_{a,a} blocks padded by
// random extra classes.
inline std::vector<MultipartiteGraph> no_it_corpus(std::uint64_t seed, std::size_t count,
                                                   std::size_t max_vertices = 16) {
  std::mt19937_64 rng(seed);
  std::vector<MultipartiteGraph> out;
  while (out.size() < count) {
    MultipartiteGraph g;
    if (rng() % 3 == 0) {
      const std::size_t a = 1 + rng() % 3;
      const std::size_t blocks = 1 + rng() % 2;
      auto base = disjoint_kaa(blocks, a);
      auto sizes = base.class_sizes();
      auto edges = base.edges();
      const std::size_t extra = rng() % 2;
      for (std::size_t e = 0; e < extra; ++e) sizes.push_back(1 + rng() % 3);
      // a few random edges toward the extra classes, respecting nothing in particular
      for (std::size_t p = 2 * blocks; p < sizes.size(); ++p) {
        for (std::size_t i = 0; i < sizes[p]; ++i) {
          if (rng() & 1) edges.emplace_back(VertexRef{rng() % (2 * blocks), rng() % a}, VertexRef{p, i});
        }
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      g = MultipartiteGraph(sizes, edges);
    } else {
      const std::size_t r = 2 + rng() % 4;
      g = random_graph(rng, random_sizes(rng, r, 1, 4), 2 + rng() % 3, 0.9);
    }
    if (g.num_vertices() > max_vertices || g.min_class_size() == 0) continue;
    if (naive_has_full_it(g)) continue;
    out.push_back(std::move(g));
  }
  return out;
}

// Independent reading of the no-IT certificate clauses: Z lies inside G_S,
// |Z| <= |S| - 1, Z meets every class of S, and the endpoints of Z dominate
// every vertex of the S classes.
inline bool certificate_clauses_hold(const MultipartiteGraph& g, const NoItCertificate& cert) {
  const auto& s = cert.classes;
  if (s.empty() || cert.edges.size() + 1 > s.size()) return false;
  std::set<VertexRef> ends;
  std::set<std::size_t> met;
  for (const auto& e : cert.edges) {
    if (!s.contains(e.a.part) || !s.contains(e.b.part)) return false;
    if (!g.valid(e.a) || !g.valid(e.b) || !g.adjacent(e.a, e.b)) return false;
    ends.insert(e.a);
    ends.insert(e.b);
    met.insert(e.a.part);
    met.insert(e.b.part);
  }
  if (met.size() != s.size()) return false;
  for (const std::size_t p : s) {
    for (std::size_t i = 0; i < g.class_size(p); ++i) {
      const VertexRef v{p, i};
      if (ends.count(v)) continue;
      bool hit = false;
      for (const auto& u : ends) hit = hit || (u.part != p && g.adjacent(u, v));
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace pit::testing
