#include "pit/imc.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "pit/rational.hpp"

namespace pit {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // False if already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

std::vector<Edge> induced_edges(const MultipartiteGraph& g, const VertexSet& s) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.adjacent(s[i], s[j])) out.emplace_back(s[i], s[j]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet neighbours_in(const MultipartiteGraph& g, VertexRef v, const VertexSet& s) {
  std::vector<VertexRef> out;
  for (const VertexRef& u : s) {
    if (g.adjacent(v, u)) out.push_back(u);
  }
  return VertexSet(std::move(out));
}

std::size_t count_in(const MultipartiteGraph& g, std::size_t id, const Bits& s) {
  return (g.neighbour_bits(id) & s).count();
}

// Allowed picks for transversals in the engine's families: avoid W, and for
// every w in W (except `skip`) keep exactly the T-neighbours of w.
Bits family_mask(const MultipartiteGraph& g, const Transversal& t, const VertexSet& w_set,
                 std::optional<VertexRef> skip) {
  Bits allowed = ~g.empty_bits();
  allowed -= to_bits(g, w_set);
  const VertexSet tv = t.vertices();
  for (const VertexRef& w : w_set) {
    if (skip && *skip == w) continue;
    const VertexSet keep = neighbours_in(g, w, tv);
    allowed -= g.neighbour_bits(g.id(w));
    for (const VertexRef& u : keep) {
      allowed -= g.class_bits(u.part);
      allowed.set(g.id(u));
    }
  }
  return allowed;
}

std::string vertex_list(const VertexSet& s) {
  std::string out;
  for (const VertexRef& v : s) {
    if (!out.empty()) out += ' ';
    out += to_string(v);
  }
  return out;
}

std::string class_list(const ClassSet& s) {
  std::string out;
  for (std::size_t c : s) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c);
  }
  return out;
}

FeasibilityVerdict violation(char cond, std::string detail) {
  FeasibilityVerdict v;
  v.condition = cond;
  v.detail = std::move(detail);
  return v;
}

// Star-forest test for condition (c).
std::optional<std::string> star_forest_problem(const MultipartiteGraph& g, const VertexSet& I,
                                               const VertexSet& w_set) {
  const std::size_t m = I.size();
  std::vector<std::vector<std::size_t>> adj(m);
  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (g.adjacent(I[i], I[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        uf.unite(i, j);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < m; ++i) comps[uf.find(i)].push_back(i);
  for (const auto& [root, members] : comps) {
    const std::size_t k = members.size();
    if (k < 2) return "isolated vertex " + to_string(I[members.front()]) + " in G[I]";
    std::size_t edges = 0;
    for (std::size_t i : members) edges += adj[i].size();
    edges /= 2;
    if (edges != k - 1) return "component of " + to_string(I[root]) + " is not a tree";
    bool ok = false;
    for (std::size_t i : members) {
      if (adj[i].size() == k - 1 && w_set.contains(I[i])) ok = true;
    }
    if (!ok) return "component of " + to_string(I[root]) + " is not a star centred in W";
  }
  return std::nullopt;
}

Rat two_delta_one_minus(std::int64_t delta, Rat frac) { return Rat(2 * delta) * (Rat(1) - frac); }

}  // namespace

VertexSet centres(const FeasiblePair& p) { return set_difference(p.I, p.T.vertices()); }

FeasiblePair seed_pair(const MultipartiteGraph& g, VertexSet I, Transversal T) {
  std::vector<std::size_t> all(g.num_classes());
  std::iota(all.begin(), all.end(), 0);
  ClassSet r = set_difference(ClassSet(std::move(all)), T.support());
  return FeasiblePair{std::move(I), std::move(T), std::move(r)};
}

FeasibilityVerdict check_feasible(const MultipartiteGraph& g, const FeasiblePair& p,
                                  std::size_t max_it, Budget& budget) {
  for (const VertexRef& v : p.I) {
    if (!g.valid(v)) return violation('c', "vertex " + to_string(v) + " is not in the graph");
  }
  if (!is_partial_it(g, p.T)) return violation('a', "T is not a partial IT");
  if (p.T.size() != max_it) {
    return violation('a', "T has " + std::to_string(p.T.size()) + " classes, maximum is " +
                              std::to_string(max_it));
  }
  const VertexSet tv = p.T.vertices();
  const ClassSet s_i = class_support(p.I);
  const ClassSet s_t = p.T.support();
  if (class_support(set_intersection(p.I, tv)) != set_intersection(s_i, s_t)) {
    return violation('b', "S(I n T) differs from S(I) n S(T)");
  }
  const VertexSet w_set = centres(p);
  if (auto problem = star_forest_problem(g, p.I, w_set)) return violation('c', *problem);
  UnionFind uf(g.num_classes());
  for (const Edge& e : induced_edges(g, p.I)) {
    if (!uf.unite(e.a.part, e.b.part)) {
      return violation('d', "contracted multigraph has a cycle through classes " +
                                std::to_string(e.a.part) + " and " + std::to_string(e.b.part));
    }
  }
  for (const VertexRef& v : w_set) {
    const std::size_t deg_v = neighbours_in(g, v, tv).size();
    if (deg_v == 0) continue;
    TransversalQuery q;
    q.classes = s_t.items();
    q.allowed = family_mask(g, p.T, w_set, v);
    q.objective = g.id(v);
    q.stop_at = deg_v - 1;
    if (auto hit = min_constrained_transversal(g, q, budget); hit && hit->objective_count < deg_v) {
      FeasibilityVerdict out = violation(
          'e', "transversal lowers |N(" + to_string(v) + ", T)| from " + std::to_string(deg_v) +
                   " to " + std::to_string(hit->objective_count));
      out.witness = hit->transversal;
      return out;
    }
  }
  FeasibilityVerdict ok;
  ok.feasible = true;
  return ok;
}

FeasibilityVerdict check_feasible(const MultipartiteGraph& g, const FeasiblePair& p,
                                  std::uint64_t budget) {
  const std::size_t max_it = max_partial_it(g, budget).size;
  Budget counter(budget);
  return check_feasible(g, p, max_it, counter);
}

AlgorithmRun run_algorithm(const MultipartiteGraph& g, const FeasiblePair& seed,
                           std::uint64_t budget) {
  const std::size_t max_it = max_partial_it(g, budget).size;
  Budget counter(budget);
  const FeasibilityVerdict v0 = check_feasible(g, seed, max_it, counter);
  if (!v0.feasible) {
    throw Error(ErrorCode::precondition_failed,
                std::string("seed pair is not feasible: (") + v0.condition + ") " + v0.detail);
  }
  if (seed.R != seed_pair(g, {}, seed.T).R) {
    throw Error(ErrorCode::precondition_failed, "R must be the classes outside S(T0)");
  }

  AlgorithmRun run{seed, 0};
  FeasiblePair& p = run.pair;
  const VertexSet r_vertices = vertices_of_classes(g, p.R);
  for (;;) {
    const ClassSet s_i = class_support(p.I);
    const VertexSet v_i = vertices_of_classes(g, s_i);
    if (dominates(g, p.I, set_union(v_i, r_vertices))) break;

    const Bits i_bits = to_bits(g, p.I);
    auto undominated = [&](const VertexSet& pool) -> std::optional<VertexRef> {
      for (const VertexRef& x : pool) {
        if (!p.I.contains(x) && count_in(g, g.id(x), i_bits) == 0) return x;
      }
      return std::nullopt;
    };
    std::optional<VertexRef> w = undominated(v_i);  // Step 2
    if (!w) w = undominated(r_vertices);             // Step 3
    if (!w) throw InternalAssertion("no undominated vertex although domination fails");

    const VertexSet w_set = centres(p);
    TransversalQuery q;
    q.classes = p.T.support().items();
    q.allowed = family_mask(g, p.T, w_set, std::nullopt);
    q.objective = g.id(*w);
    q.stop_at = 0;
    auto hit = min_constrained_transversal(g, q, counter);
    if (!hit) throw InternalAssertion("augmentation family is empty (it must contain T)");

    FeasiblePair next = p;
    next.T = hit->transversal;
    next.I.insert(*w);
    for (const VertexRef& u : neighbours_in(g, *w, next.T.vertices())) next.I.insert(u);
    ++run.steps;
    if (next.I.size() <= p.I.size()) {
      throw InternalAssertion("step " + std::to_string(run.steps) + ": I did not grow");
    }
    const FeasibilityVerdict v = check_feasible(g, next, max_it, counter);
    if (!v.feasible) {
      throw InternalAssertion("step " + std::to_string(run.steps) + ": condition (" +
                              v.condition + ") fails: " + v.detail);
    }
    p = std::move(next);
  }
  return run;
}

std::string_view to_string(SetupLevel level) {
  switch (level) {
    case SetupLevel::none: return "none";
    case SetupLevel::setup_i: return "setup-i";
    case SetupLevel::setup_ii: return "setup-ii";
    case SetupLevel::odd_setup_i: return "odd-setup-i";
    case SetupLevel::odd_setup_ii: return "odd-setup-ii";
  }
  return "unknown";
}

SetupLevel setup_level(const MultipartiteGraph& g, std::size_t d) {
  const auto r = static_cast<std::int64_t>(g.num_classes());
  const auto dd = static_cast<std::int64_t>(d);
  if (r == 0 || dd >= r) return SetupLevel::none;
  const Rat n(static_cast<std::int64_t>(g.min_class_size()));
  const auto delta = static_cast<std::int64_t>(g.max_degree());
  const std::int64_t q = r / (dd + 1);
  if (!(n > two_delta_one_minus(delta, Rat(2 * dd + 3, 2 * r)))) return SetupLevel::none;
  if (!(n > two_delta_one_minus(delta, Rat(4 * dd + 5, 4 * r)))) return SetupLevel::setup_i;
  if (q < 3 || q % 2 == 0 || !(n > two_delta_one_minus(delta, Rat(1, q - 1)))) {
    return SetupLevel::setup_ii;
  }
  if (!(n > Rat(delta) * (Rat(2) - Rat(6 * dd + 7, 3 * r)))) return SetupLevel::odd_setup_i;
  return SetupLevel::odd_setup_ii;
}

std::size_t ExtendedForest::component_of(std::size_t cls) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].contains(cls)) return i;
  }
  throw Error(ErrorCode::invalid_argument, "class " + std::to_string(cls) + " not in the forest");
}

ExtendedForest extended_forest(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& R) {
  ExtendedForest f;
  f.nodes = set_union(R, class_support(I));
  UnionFind uf(g.num_classes());
  for (const Edge& e : induced_edges(g, I)) {
    f.edges.emplace_back(e.a.part, e.b.part);
    if (!uf.unite(e.a.part, e.b.part)) f.acyclic = false;
  }
  std::sort(f.edges.begin(), f.edges.end());
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c : f.nodes) groups[uf.find(c)].push_back(c);
  for (auto& [root, members] : groups) f.components.emplace_back(std::move(members));
  std::sort(f.components.begin(), f.components.end(),
            [](const ClassSet& a, const ClassSet& b) { return a[0] < b[0]; });
  return f;
}

bool is_imc(const MultipartiteGraph& g, const VertexSet& I) {
  const Bits bits = to_bits(g, I);
  for (const VertexRef& v : I) {
    if (count_in(g, g.id(v), bits) != 1) return false;
  }
  return extended_forest(g, I, {}).acyclic;
}

bool is_similar(const MultipartiteGraph& g, const VertexSet& candidate, const ImcRecord& rec) {
  if (class_support(candidate) != class_support(rec.I)) return false;
  if (!dominates(g, candidate, vertices_of_classes(g, rec.forest.nodes))) return false;
  return extended_forest(g, candidate, rec.R).components == rec.forest.components;
}

AvSets compute_av(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& R) {
  AvSets out;
  for (const VertexRef& v : I) out.av[v];
  const Bits bits = to_bits(g, I);
  const ClassSet classes = set_union(R, class_support(I));
  for (const VertexRef& x : vertices_of_classes(g, classes)) {
    const Bits hits = g.neighbour_bits(g.id(x)) & bits;
    const std::size_t c = hits.count();
    if (c == 1) {
      out.av[g.ref(hits.find_first())].insert(x);
    } else if (c >= 2) {
      out.twice_dominated.insert(x);
    }
  }
  return out;
}

namespace {

void require_precondition(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::precondition_failed, what);
}

void assert_that(bool ok, const std::string& what) {
  if (!ok) throw InternalAssertion(what);
}

}  // namespace

ImcRecord extract_imc(const MultipartiteGraph& g, std::size_t d, const FeasiblePair& seed,
                      std::uint64_t budget) {
  const std::size_t r = g.num_classes();
  require_precondition(d < r, "need d < r");
  require_precondition(g.min_class_size() >= 1, "every class must be nonempty");
  const std::size_t max_it = max_partial_it(g, budget).size;
  require_precondition(max_it + d + 1 == r, "largest partial IT has " + std::to_string(max_it) +
                                                " classes, need r - d - 1 = " +
                                                std::to_string(r - d - 1));

  const AlgorithmRun run = run_algorithm(g, seed, budget);
  ImcRecord rec;
  rec.d = d;
  rec.I = run.pair.I;
  rec.T = run.pair.T;
  rec.R = run.pair.R;
  rec.steps = run.steps;

  // (i)
  assert_that(seed.I.is_subset_of(rec.I), "(i) I0 is not contained in I");
  assert_that(class_support(rec.I).size() >= 2, "(i) |S(I)| < 2");
  assert_that(rec.T.support() == seed.T.support(), "(i) S(T) differs from S(T0)");
  for (std::size_t c : class_support(seed.I)) {
    assert_that(rec.T.pick_in(c) == seed.T.pick_in(c), "(i) T changed on a class of S(I0)");
  }
  // (ii)
  rec.forest = extended_forest(g, rec.I, rec.R);
  assert_that(dominates(g, rec.I, vertices_of_classes(g, rec.forest.nodes)),
              "(ii) I does not dominate S(I) and R");
  // (iii)
  assert_that(rec.forest.acyclic, "(iii) F_I has a cycle");
  assert_that(rec.forest.components.size() == d + 1, "(iii) F_I has " +
                                                         std::to_string(rec.forest.components.size()) +
                                                         " components, expected d+1");
  for (const ClassSet& comp : rec.forest.components) {
    assert_that(set_intersection(comp, rec.R).size() == 1,
                "(iii) a component of F_I does not hold exactly one class of R");
  }
  // (iv)
  rec.t = rec.forest.nodes.size();
  assert_that(rec.I.size() <= 2 * (rec.t - d - 1), "(iv) |I| > 2(t-d-1)");

  rec.edges = induced_edges(g, rec.I);
  rec.is_imc = is_imc(g, rec.I);
  rec.level = setup_level(g, d);
  if (rec.level != SetupLevel::none) {
    assert_that(rec.is_imc, "I is not an IMC above the setup-i threshold");
    assert_that(rec.I.size() == 2 * (rec.t - d - 1), "|I| != 2(t-d-1) above the setup-i threshold");
  }
  if (rec.is_imc) {
    const VertexSet tv = rec.T.vertices();
    for (const Edge& e : rec.edges) {
      const bool a_centre = !tv.contains(e.a);
      const bool b_centre = !tv.contains(e.b);
      if (b_centre && !a_centre) {
        rec.matching.emplace_back(e.b, e.a);
      } else {
        rec.matching.emplace_back(e.a, e.b);
      }
    }
    std::sort(rec.matching.begin(), rec.matching.end());
  }
  AvSets av = compute_av(g, rec.I, rec.R);
  rec.av = std::move(av.av);
  rec.twice_dominated = std::move(av.twice_dominated);
  return rec;
}

ImcRecord extract_imc(const MultipartiteGraph& g, std::size_t d, std::uint64_t budget) {
  const SolveResult best = max_partial_it(g, budget);
  return extract_imc(g, d, seed_pair(g, {}, best.witness), budget);
}

Transversal it_from_imc(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& tree_classes,
                        std::size_t omit, std::optional<VertexRef> undominated) {
  if (!tree_classes.contains(omit)) {
    throw Error(ErrorCode::invalid_argument, "omitted class is not in the tree");
  }
  std::vector<VertexRef> sub;
  for (const VertexRef& v : I) {
    if (tree_classes.contains(v.part)) sub.push_back(v);
  }
  const VertexSet part(std::move(sub));
  const std::vector<Edge> edges = induced_edges(g, part);
  const ClassSet support = class_support(part);
  if (!support.is_subset_of(tree_classes) || edges.size() + 1 != tree_classes.size()) {
    throw Error(ErrorCode::invalid_argument, "classes do not carry a tree of the IMC");
  }
  // class -> (neighbour class, endpoint in this class)
  std::map<std::size_t, std::vector<std::pair<std::size_t, VertexRef>>> adj;
  for (const Edge& e : edges) {
    adj[e.a.part].emplace_back(e.b.part, e.a);
    adj[e.b.part].emplace_back(e.a.part, e.b);
  }
  std::vector<VertexRef> picks;
  ClassSet seen{omit};
  std::queue<std::size_t> frontier;
  frontier.push(omit);
  while (!frontier.empty()) {
    const std::size_t c = frontier.front();
    frontier.pop();
    for (const auto& [child, endpoint_here] : adj[c]) {
      (void)endpoint_here;
      if (seen.contains(child)) continue;
      seen.insert(child);
      // The endpoint in the child class of the edge toward its parent.
      for (const auto& [parent, endpoint] : adj[child]) {
        if (parent == c) {
          picks.push_back(endpoint);
          break;
        }
      }
      frontier.push(child);
    }
  }
  if (seen != tree_classes) {
    throw Error(ErrorCode::invalid_argument, "classes do not carry a tree of the IMC");
  }
  if (undominated) {
    if (undominated->part != omit || !g.valid(*undominated) ||
        !neighbours_in(g, *undominated, part).empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "vertex must lie in the omitted class with no neighbour in the tree's part of I");
    }
    picks.push_back(*undominated);
  }
  Transversal out(std::move(picks));
  if (!is_partial_it(g, out)) {
    throw Error(ErrorCode::invalid_argument, "I is not an induced matching on these classes");
  }
  return out;
}

AuxiliaryGraph build_h(const MultipartiteGraph& g, const ImcRecord& rec) {
  if (!rec.is_imc || rec.matching.empty()) {
    throw Error(ErrorCode::invalid_argument, "H needs an IMC with at least one edge");
  }
  AuxiliaryGraph h;
  for (const auto& [v, w] : rec.matching) {
    h.owners.push_back(v);
    h.owners.push_back(w);
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cls(g.num_vertices(), none);
  std::vector<std::size_t> idx(g.num_vertices(), none);
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < h.owners.size(); ++c) {
    const VertexSet& a = rec.av.at(h.owners[c]);
    h.to_g.emplace_back(a.items());
    sizes.push_back(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      cls[g.id(a[i])] = c;
      idx[g.id(a[i])] = i;
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    const std::size_t ca = cls[g.id(e.a)];
    const std::size_t cb = cls[g.id(e.b)];
    if (ca == none || cb == none || ca == cb) continue;
    if (ca / 2 == cb / 2) continue;  // matched pair
    edges.emplace_back(VertexRef{ca, idx[g.id(e.a)]}, VertexRef{cb, idx[g.id(e.b)]});
  }
  std::sort(edges.begin(), edges.end());
  h.graph = MultipartiteGraph(std::move(sizes), edges);
  return h;
}

std::string_view to_string(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::pass: return "pass";
    case LemmaStatus::fail: return "fail";
    case LemmaStatus::not_applicable: return "not-applicable";
    case LemmaStatus::budget: return "budget";
  }
  return "unknown";
}

bool is_critical_edge(const MultipartiteGraph& g, std::size_t d, const Edge& e,
                      std::uint64_t budget) {
  const std::size_t r = g.num_classes();
  if (d >= r || !g.valid(e.a) || !g.valid(e.b) || !g.adjacent(e.a, e.b)) return false;
  if (has_it_of_size(g, r - d, budget)) return false;
  return has_it_of_size(without_edge(g, e), r - d, budget).has_value();
}

FeasiblePair seed_from_critical_edge(const MultipartiteGraph& g, std::size_t d, const Edge& e,
                                     std::uint64_t budget) {
  const std::size_t r = g.num_classes();
  require_precondition(d < r, "need d < r");
  require_precondition(g.valid(e.a) && g.valid(e.b) && g.adjacent(e.a, e.b),
                       "edge " + to_string(e.a) + " " + to_string(e.b) + " is not in the graph");
  require_precondition(!has_it_of_size(g, r - d, budget), "graph has an (r-d)-IT");
  const auto lifted = has_it_of_size(without_edge(g, e), r - d, budget);
  require_precondition(lifted.has_value(), "removing the edge creates no (r-d)-IT");
  const VertexSet tv = lifted->vertices();
  assert_that(tv.contains(e.a) && tv.contains(e.b),
              "(r-d)-IT of g - e misses an endpoint of e");
  std::vector<VertexRef> rest;
  for (const VertexRef& v : tv) {
    if (v != e.a) rest.push_back(v);
  }
  FeasiblePair p = seed_pair(g, VertexSet{e.a, e.b}, Transversal(std::move(rest)));
  const FeasibilityVerdict v = check_feasible(g, p, budget);
  assert_that(v.feasible, std::string("critical-edge seed fails condition (") + v.condition +
                              "): " + v.detail);
  return p;
}

NoItCertificate no_it_certificate(const MultipartiteGraph& g, std::uint64_t budget) {
  const std::size_t r = g.num_classes();
  require_precondition(r >= 1 && g.min_class_size() >= 1, "every class must be nonempty");
  require_precondition(!has_it_of_size(g, r, budget), "graph has a full IT");

  std::vector<std::size_t> all(r);
  std::iota(all.begin(), all.end(), 0);
  ClassSet y(std::move(all));
  for (std::size_t c = 0; c < r; ++c) {
    ClassSet smaller = y;
    smaller.erase(c);
    if (smaller.empty()) continue;
    if (!has_it_of_size(induced_on_classes(g, smaller), smaller.size(), budget)) y = smaller;
  }
  const MultipartiteGraph h = induced_on_classes(g, y);
  const auto t = has_it_of_size(h, y.size() - 1, budget);
  assert_that(t.has_value(), "minimal IT-free class set has no IT after dropping a class");
  const AlgorithmRun run = run_algorithm(h, seed_pair(h, {}, *t), budget);

  NoItCertificate cert;
  for (std::size_t c : set_union(run.pair.R, class_support(run.pair.I))) cert.classes.insert(y[c]);
  for (const Edge& e : induced_edges(h, run.pair.I)) {
    cert.edges.emplace_back(VertexRef{y[e.a.part], e.a.index}, VertexRef{y[e.b.part], e.b.index});
  }
  std::sort(cert.edges.begin(), cert.edges.end());
  const CertificateVerdict verdict = verify_no_it_certificate(g, cert);
  assert_that(verdict.valid, "certificate from the algorithm is invalid: " + verdict.reason);
  return cert;
}

namespace {

// Raised by a check whose extra hypothesis turns out not to hold.
struct NotApplicable {
  std::string why;
};

class LemmaChecker {
 public:
  LemmaChecker(const MultipartiteGraph& g, const ImcRecord& rec, const LemmaOptions& opt)
      : g_(g), rec_(rec), opt_(opt) {
    n_ = static_cast<std::int64_t>(g.min_class_size());
    delta_ = static_cast<std::int64_t>(g.max_degree());
    t_ = static_cast<std::int64_t>(rec.t);
    d_ = static_cast<std::int64_t>(rec.d);
    r_ = static_cast<std::int64_t>(g.num_classes());
    q_ = r_ / (d_ + 1);
    v_prime_ = vertices_of_classes(g, rec.forest.nodes);
    i_bits_ = to_bits(g, rec.I);
  }

  std::vector<LemmaResult> run() {
    const SetupLevel lv = rec_.level;
    const bool s1 = lv >= SetupLevel::setup_i;
    const bool s2 = lv >= SetupLevel::setup_ii;
    const bool o1 = lv >= SetupLevel::odd_setup_i;
    const bool o2 = lv >= SetupLevel::odd_setup_ii;
    std::vector<LemmaResult> out;
    add(out, "avsize-i", true, [&] { return avsize_i(); });
    add(out, "avsize-ii", true, [&] { return avsize_ii(); });
    add(out, "avsize-iii", s2, [&] { return avsize_iii(); });
    add(out, "samecomp-i", s1, [&] { return samecomp_i(); });
    add(out, "samecomp-ii", s1, [&] { return samecomp_ii(); });
    add(out, "samecomp-iii", s1, [&] { return samecomp_iii(); });
    add(out, "prop-b", s1, [&] { return prop_b(); });
    add(out, "it-is-imc", s1, [&] { return it_is_imc(); });
    add(out, "lem-a", s2, [&] { return lem_a(); });
    add(out, "notdomsamecomp", s2, [&] { return notdomsamecomp(); });
    add(out, "component-counting", s2, [&] { return component_counting(); });
    add(out, "component-size", o1, [&] { return component_size(); });
    add(out, "almost-bpg", o2, [&] { return almost_bpg(); });
    add(out, "full-bpg", o2, [&] { return full_bpg(); });
    add(out, "critical-edge-seeding", s1, [&] { return critical_edge_seeding(); });
    return out;
  }

 private:
  using Outcome = std::pair<bool, std::string>;

  template <class F>
  void add(std::vector<LemmaResult>& out, std::string name, bool applicable, F&& check) {
    LemmaResult res;
    res.name = std::move(name);
    if (!applicable) {
      res.status = LemmaStatus::not_applicable;
      res.detail = "hypothesis not met at level " + std::string(to_string(rec_.level));
      out.push_back(std::move(res));
      return;
    }
    try {
      auto [ok, detail] = check();
      res.status = ok ? LemmaStatus::pass : LemmaStatus::fail;
      res.detail = std::move(detail);
    } catch (const BudgetExhausted& e) {
      res.status = LemmaStatus::budget;
      res.detail = e.what();
    } catch (const NotApplicable& e) {
      res.status = LemmaStatus::not_applicable;
      res.detail = e.why;
    }
    out.push_back(std::move(res));
  }

  std::vector<std::int64_t> sorted_av_sizes() const {
    std::vector<std::int64_t> s;
    for (const auto& [v, a] : rec_.av) s.push_back(static_cast<std::int64_t>(a.size()));
    std::sort(s.begin(), s.end());
    return s;
  }

  std::size_t comp_of(std::size_t cls) const { return rec_.forest.component_of(cls); }

  Outcome avsize_i() const {
    std::int64_t twice = 0;
    for (std::size_t id = 0; id < g_.num_vertices(); ++id) {
      if (count_in(g_, id, i_bits_) >= 2) ++twice;
    }
    const std::int64_t bound = 2 * delta_ * (t_ - d_ - 1) - t_ * n_;
    return {twice <= bound,
            std::to_string(twice) + " twice-dominated, bound " + std::to_string(bound)};
  }

  // Over every Y, |union A_v| is smallest for the |Y| smallest sets (they are disjoint).
  Outcome avsize_ii() const {
    const auto s = sorted_av_sizes();
    std::int64_t sum = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
      const std::int64_t bound =
          (static_cast<std::int64_t>(k) + 4 * d_ + 4 - 4 * t_) * delta_ + 2 * t_ * n_;
      if (sum < bound) {
        return {false, "|Y|=" + std::to_string(k) + ": " + std::to_string(sum) + " < " +
                           std::to_string(bound)};
      }
      if (k < s.size()) sum += s[k];
    }
    return {true, "checked all |Y| via smallest A_v"};
  }

  Outcome avsize_iii() const {
    const auto s = sorted_av_sizes();
    std::int64_t sum = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
      const std::int64_t bound = (static_cast<std::int64_t>(k) - 1) * delta_;
      if (!(sum > bound)) {
        return {false, "|Y|=" + std::to_string(k) + ": " + std::to_string(sum) +
                           " <= " + std::to_string(bound)};
      }
      if (k < s.size()) sum += s[k];
    }
    return {true, "checked all |Y| via smallest A_v"};
  }

  Outcome samecomp_i() const {
    for (const auto& [v, w] : rec_.matching) {
      const std::size_t c = comp_of(v.part);
      for (const VertexRef& x : set_union(rec_.av.at(v), rec_.av.at(w))) {
        if (comp_of(x.part) != c) {
          return {false, to_string(x) + " lies outside the component of " + to_string(v)};
        }
      }
    }
    return {true, std::to_string(rec_.matching.size()) + " matched pairs"};
  }

  Outcome samecomp_ii() const {
    for (const auto& [v, w] : rec_.matching) {
      for (const VertexRef& a : rec_.av.at(v)) {
        for (const VertexRef& b : rec_.av.at(w)) {
          if (!g_.adjacent(a, b)) {
            return {false, to_string(a) + " and " + to_string(b) + " not adjacent"};
          }
        }
      }
    }
    return {true, "every G[A_v, A_w] complete"};
  }

  Outcome samecomp_iii() const {
    std::size_t checked = 0;
    for (const auto& [v, w] : rec_.matching) {
      VertexSet base = rec_.I;
      base.erase(v);
      base.erase(w);
      for (const VertexRef& a : rec_.av.at(v)) {
        for (const VertexRef& b : rec_.av.at(w)) {
          VertexSet swapped = base;
          swapped.insert(a);
          swapped.insert(b);
          ++checked;
          if (!is_imc(g_, swapped) || !is_similar(g_, swapped, rec_)) {
            return {false, "swap " + to_string(v) + "->" + to_string(a) + ", " + to_string(w) +
                               "->" + to_string(b) + " is not a similar IMC"};
          }
        }
      }
    }
    return {true, std::to_string(checked) + " swaps"};
  }

  Outcome prop_b() const {
    std::vector<std::size_t> all(g_.num_classes());
    std::iota(all.begin(), all.end(), 0);
    const ClassSet u = set_difference(ClassSet(std::move(all)), rec_.forest.nodes);
    if (u.empty()) return {true, "no undominated classes"};
    for (std::size_t id = 0; id < g_.num_vertices(); ++id) {
      VertexSet ix = rec_.I;
      ix.insert(g_.ref(id));
      if (!avoidance_it(g_, u, neighbourhood(g_, ix), opt_.budget)) {
        return {false, "no IT of the remaining classes avoids N(I + " + to_string(g_.ref(id)) + ")"};
      }
    }
    return {true, std::to_string(g_.num_vertices()) + " vertices x"};
  }

  Outcome it_is_imc() const {
    const AuxiliaryGraph h = build_h(g_, rec_);
    std::vector<std::size_t> classes(h.graph.num_classes());
    std::iota(classes.begin(), classes.end(), 0);
    Budget counter(opt_.budget);
    const auto its = enumerate_transversals(h.graph, classes, ~h.graph.empty_bits(),
                                            opt_.h_transversal_limit, counter);
    if (its.empty()) return {false, "H has no IT although I is one"};
    for (const Transversal& t : its) {
      std::vector<VertexRef> mapped;
      for (const VertexRef& x : t.picks()) mapped.push_back(h.to_g[x.part][x.index]);
      const VertexSet cand(std::move(mapped));
      if (!is_imc(g_, cand) || !is_similar(g_, cand, rec_)) {
        return {false, "IT {" + vertex_list(cand) + "} of H is not a similar IMC"};
      }
    }
    return {true, std::to_string(its.size()) + " ITs of H"};
  }

  Outcome lem_a() const {
    const AuxiliaryGraph h = build_h(g_, rec_);
    std::vector<std::size_t> classes(h.graph.num_classes());
    std::iota(classes.begin(), classes.end(), 0);
    std::size_t families = 0;
    for (std::size_t id = 0; id < g_.num_vertices(); ++id) {
      const Bits& nx = g_.neighbour_bits(id);
      Bits allowed = h.graph.empty_bits();
      bool nonempty = true;
      std::int64_t removed = 0;
      for (std::size_t c = 0; c < h.owners.size() && nonempty; ++c) {
        std::size_t kept = 0;
        for (std::size_t i = 0; i < h.to_g[c].size(); ++i) {
          if (nx[g_.id(h.to_g[c][i])]) {
            ++removed;
          } else {
            allowed.set(h.graph.id(VertexRef{c, i}));
            ++kept;
          }
        }
        nonempty = kept > 0;
      }
      if (!nonempty || removed > delta_) continue;
      ++families;
      Budget counter(opt_.budget);
      if (enumerate_transversals(h.graph, classes, allowed, 1, counter).empty()) {
        return {false, "no IT of A_v \\ N(" + to_string(g_.ref(id)) + ") in H"};
      }
    }
    return {true, std::to_string(families) + " families A_v \\ N(x)"};
  }

  Outcome notdomsamecomp() const {
    for (const VertexRef& x : v_prime_) {
      const Bits& nx = g_.neighbour_bits(g_.id(x));
      const std::size_t cx = comp_of(x.part);
      bool found = false;
      for (const auto& [v, a] : rec_.av) {
        if (comp_of(v.part) != cx) continue;
        bool joined = true;
        for (const VertexRef& y : a) joined = joined && nx[g_.id(y)];
        if (joined) {
          found = true;
          break;
        }
      }
      if (!found) return {false, to_string(x) + " is joined to no A_v of its component"};
    }
    return {true, std::to_string(v_prime_.size()) + " vertices"};
  }

  Outcome component_counting() const {
    for (const ClassSet& comp : rec_.forest.components) {
      const auto j = static_cast<std::int64_t>(comp.size());
      std::vector<VertexRef> in;
      for (const VertexRef& v : rec_.I) {
        if (comp.contains(v.part)) in.push_back(v);
      }
      const VertexSet i_j(std::move(in));
      const VertexSet v_j = vertices_of_classes(g_, comp);
      const auto size_i = static_cast<std::int64_t>(i_j.size());
      const auto size_v = static_cast<std::int64_t>(v_j.size());
      const std::string where = "component {" + class_list(comp) + "}";
      if (size_i != 2 * (j - 1)) return {false, where + ": |I n V_J| != 2(j-1)"};
      if (!dominates(g_, i_j, v_j)) return {false, where + ": I n V_J does not dominate V_J"};
      if (size_v > delta_ * size_i) return {false, where + ": |V_J| > Delta |I n V_J|"};
      if (j <= q_ && j * n_ - 2 * delta_ * (j - 1) > 0) {
        return {false, where + ": j <= q yet jn > 2 Delta (j-1)"};
      }
    }
    return {true, std::to_string(rec_.forest.components.size()) + " components"};
  }

  Outcome component_size() const {
    if (static_cast<std::int64_t>(rec_.forest.nodes.size()) < q_ * (d_ + 1)) {
      return {false, "F_I has fewer than q(d+1) classes"};
    }
    for (const ClassSet& comp : rec_.forest.components) {
      if (static_cast<std::int64_t>(comp.size()) < q_) {
        return {false, "component {" + class_list(comp) + "} has fewer than q classes"};
      }
    }
    return {true, "every component has >= q classes"};
  }

  VertexSet joined_to(const VertexSet& a) const {
    std::vector<VertexRef> out;
    for (const VertexRef& x : v_prime_) {
      const Bits& nx = g_.neighbour_bits(g_.id(x));
      bool all = true;
      for (const VertexRef& y : a) all = all && nx[g_.id(y)];
      if (all) out.push_back(x);
    }
    return VertexSet(std::move(out));
  }

  Outcome almost_bpg() const {
    for (const auto& [v, w] : rec_.matching) {
      for (const VertexRef& a : joined_to(rec_.av.at(w))) {
        for (const VertexRef& b : joined_to(rec_.av.at(v))) {
          if (a == b || !g_.adjacent(a, b)) {
            return {false, to_string(a) + " and " + to_string(b) + " not adjacent"};
          }
        }
      }
    }
    return {true, std::to_string(rec_.matching.size()) + " matched pairs"};
  }

  Outcome full_bpg() const {
    for (const Edge& e : g_.edges()) {
      if (!is_critical_edge(g_, rec_.d, e, opt_.budget)) {
        throw NotApplicable{"some edge is not critical"};
      }
    }
    const std::size_t m = v_prime_.size();
    UnionFind uf(m);
    std::vector<int> side(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (g_.adjacent(v_prime_[i], v_prime_[j])) uf.unite(i, j);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < m; ++i) comps[uf.find(i)].push_back(i);
    if (static_cast<std::int64_t>(comps.size()) != t_ - d_ - 1) {
      return {false, "G[V'] has " + std::to_string(comps.size()) + " components, expected t-d-1"};
    }
    for (const auto& [root, members] : comps) {
      // 2-colour by BFS, then require every cross pair adjacent and no same-side edge.
      side[members.front()] = 0;
      std::queue<std::size_t> todo;
      todo.push(members.front());
      while (!todo.empty()) {
        const std::size_t i = todo.front();
        todo.pop();
        for (std::size_t j : members) {
          if (j == i || !g_.adjacent(v_prime_[i], v_prime_[j])) continue;
          if (side[j] == -1) {
            side[j] = 1 - side[i];
            todo.push(j);
          } else if (side[j] == side[i]) {
            return {false, "component of " + to_string(v_prime_[i]) + " is not bipartite"};
          }
        }
      }
      for (std::size_t i : members) {
        for (std::size_t j : members) {
          if (side[i] != side[j] && !g_.adjacent(v_prime_[i], v_prime_[j])) {
            return {false, "component of " + to_string(v_prime_[i]) + " is not complete bipartite"};
          }
        }
      }
    }
    return {true, std::to_string(comps.size()) + " complete bipartite components"};
  }

  Outcome critical_edge_seeding() const {
    std::size_t found = 0;
    for (const Edge& e : g_.edges()) {
      if (found >= opt_.critical_edge_limit) break;
      if (!is_critical_edge(g_, rec_.d, e, opt_.budget)) continue;
      ++found;
      const FeasiblePair seed = seed_from_critical_edge(g_, rec_.d, e, opt_.budget);
      const ImcRecord out = extract_imc(g_, rec_.d, seed, opt_.budget);
      if (!out.I.contains(e.a) || !out.I.contains(e.b)) {
        return {false, "IMC seeded at " + to_string(e.a) + " " + to_string(e.b) +
                           " does not contain the edge"};
      }
    }
    return {true, std::to_string(found) + " critical edges seeded"};
  }

  const MultipartiteGraph& g_;
  const ImcRecord& rec_;
  const LemmaOptions& opt_;
  std::int64_t n_ = 0, delta_ = 0, t_ = 0, d_ = 0, r_ = 0, q_ = 0;
  VertexSet v_prime_;
  Bits i_bits_;
};

}  // namespace

std::vector<LemmaResult> check_structure_lemmas(const MultipartiteGraph& g, const ImcRecord& rec,
                                                const LemmaOptions& opt) {
  return LemmaChecker(g, rec, opt).run();
}

std::string format_imc(const ImcRecord& rec) {
  std::ostringstream out;
  out << "imc d=" << rec.d << " t=" << rec.t << " size=" << rec.I.size()
      << " level=" << to_string(rec.level) << " is_imc=" << (rec.is_imc ? "yes" : "no")
      << " steps=" << rec.steps << "\n";
  out << "R: " << class_list(rec.R) << "\n";
  out << "T: " << to_string(rec.T) << "\n";
  out << "I: " << vertex_list(rec.I) << "\n";
  out << "matching:\n";
  for (const auto& [v, w] : rec.matching) out << "  " << to_string(v) << " " << to_string(w) << "\n";
  if (rec.matching.empty()) {
    for (const Edge& e : rec.edges) out << "  " << to_string(e.a) << " " << to_string(e.b) << "\n";
  }
  out << "forest edges:\n";
  for (const auto& [a, b] : rec.forest.edges) out << "  " << a << " " << b << "\n";
  out << "components:\n";
  for (std::size_t i = 0; i < rec.forest.components.size(); ++i) {
    const ClassSet& comp = rec.forest.components[i];
    out << "  " << i << ": " << class_list(comp) << " root " << class_list(set_intersection(comp, rec.R))
        << "\n";
  }
  out << "A_v sizes:\n";
  for (const auto& [v, a] : rec.av) out << "  " << to_string(v) << " " << a.size() << "\n";
  out << "twice-dominated: " << rec.twice_dominated.size() << "\n";
  return out.str();
}

std::string format_certificate(const MultipartiteGraph& g, const NoItCertificate& cert) {
  const CertificateVerdict v = verify_no_it_certificate(g, cert);
  std::ostringstream out;
  out << "certificate\n";
  out << "S: " << class_list(cert.classes) << "\n";
  out << "Z:\n";
  for (const Edge& e : cert.edges) out << "  " << to_string(e.a) << " " << to_string(e.b) << "\n";
  out << "verdict: " << (v.valid ? "valid" : "invalid: " + v.reason) << "\n";
  return out.str();
}

std::string format_lemmas(const std::vector<LemmaResult>& results) {
  std::ostringstream out;
  for (const LemmaResult& r : results) {
    out << r.name << ": " << to_string(r.status);
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace pit
