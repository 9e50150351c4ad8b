#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pit/error.hpp"
#include "pit/graph.hpp"
#include "pit/solver.hpp"
#include "pit/transversal.hpp"

namespace pit {

// State of the augmentation algorithm. R is fixed when the pair is seeded:
// the classes not covered by the seed transversal.
struct FeasiblePair {
  VertexSet I;
  Transversal T;
  ClassSet R;
};

// W = I \ T.
VertexSet centres(const FeasiblePair& p);

// Makes (I, T) with R = classes outside S(T).
FeasiblePair seed_pair(const MultipartiteGraph& g, VertexSet I, Transversal T);

struct FeasibilityVerdict {
  bool feasible = false;
  char condition = 0;  // 'a'..'e' for the first violated condition
  std::string detail;
  std::optional<Transversal> witness;  // improving transversal for (e)
};

// Conditions (a)-(e). The transversal family for (e) fixes N(w, T') = N(w, T)
// only for w in W \ {v}.
FeasibilityVerdict check_feasible(const MultipartiteGraph& g, const FeasiblePair& p,
                                  std::uint64_t budget = kDefaultBudget);
FeasibilityVerdict check_feasible(const MultipartiteGraph& g, const FeasiblePair& p,
                                  std::size_t max_it, Budget& budget);

struct AlgorithmRun {
  FeasiblePair pair;
  std::size_t steps = 0;
};

// Grows I until it dominates every vertex in S(I) and R. The augmentation
// family fixes N(v, T') = N(v, T) for every v in W. Every step re-checks
// feasibility and growth of I; a failure throws InternalAssertion.
// Throws precondition_failed if the seed is not feasible.
AlgorithmRun run_algorithm(const MultipartiteGraph& g, const FeasiblePair& seed,
                           std::uint64_t budget = kDefaultBudget);

enum class SetupLevel { none, setup_i, setup_ii, odd_setup_i, odd_setup_ii };
std::string_view to_string(SetupLevel level);

// Exact strict comparisons of the minimum class size n against
//   setup-i       2D(1 - (2d+3)/(2r))
//   setup-ii      2D(1 - (4d+5)/(4r))
//   odd-setup-i   2D(1 - 1/(q-1)), q = floor(r/(d+1)) odd >= 3
//   odd-setup-ii  D(2 - (6d+7)/(3r))
// with D the maximum degree of g. Each level includes the previous one.
SetupLevel setup_level(const MultipartiteGraph& g, std::size_t d);

// R u S(I) with the class pairs of E(G[I]) as edges.
struct ExtendedForest {
  ClassSet nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted, smaller class first
  std::vector<ClassSet> components;                        // ordered by least class
  bool acyclic = true;

  std::size_t component_of(std::size_t cls) const;  // index into components
};

ExtendedForest extended_forest(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& R);

struct ImcRecord {
  std::size_t d = 0;
  VertexSet I;
  Transversal T;
  ClassSet R;
  std::vector<Edge> edges;  // E(G[I])
  // (centre, leaf) pairs ordered by centre; filled when G[I] is a perfect matching.
  std::vector<std::pair<VertexRef, VertexRef>> matching;
  ExtendedForest forest;
  std::size_t t = 0;
  bool is_imc = false;
  SetupLevel level = SetupLevel::none;
  std::map<VertexRef, VertexSet> av;
  VertexSet twice_dominated;  // vertices of the R u S(I) classes with >= 2 neighbours in I
  std::size_t steps = 0;
};

// Runs the algorithm from `seed` and asserts the conclusions: I0 in I,
// |S(I)| >= 2, S(T) = S(T0), T agrees with T0 on S(I0); domination of
// S(I) u R; F_I a forest of d+1 components each holding one class of R;
// |I| <= 2(t-d-1); above the setup-i threshold also a perfect matching with
// |I| = 2(t-d-1). Throws precondition_failed unless the largest partial IT
// has r-d-1 classes and every class is nonempty.
ImcRecord extract_imc(const MultipartiteGraph& g, std::size_t d, const FeasiblePair& seed,
                      std::uint64_t budget = kDefaultBudget);

// Seeds with (empty, lexicographically least maximum partial IT).
ImcRecord extract_imc(const MultipartiteGraph& g, std::size_t d,
                      std::uint64_t budget = kDefaultBudget);

// G[I] is a perfect matching and the contracted multigraph is a forest.
bool is_imc(const MultipartiteGraph& g, const VertexSet& I);

// Same S(I), dominates the R u S(I) classes, same F components.
bool is_similar(const MultipartiteGraph& g, const VertexSet& candidate, const ImcRecord& rec);

// Independent transversal read off a tree of the IMC: rooted at `omit`, each
// other class contributes the endpoint of its edge toward the parent. With
// `undominated` (a vertex of the omitted class without neighbours in the
// tree's part of I) the omitted class is covered too.
Transversal it_from_imc(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& tree_classes,
                        std::size_t omit, std::optional<VertexRef> undominated = std::nullopt);

struct AvSets {
  std::map<VertexRef, VertexSet> av;
  VertexSet twice_dominated;
};

// A_v: vertices of the R u S(I) classes whose only neighbour in I is v.
AvSets compute_av(const MultipartiteGraph& g, const VertexSet& I, const ClassSet& R);

// Classes are the A_v in matching order (centre, leaf, centre, leaf, ...);
// edges inside an A_v and between matched A_v, A_w are dropped.
struct AuxiliaryGraph {
  MultipartiteGraph graph;
  std::vector<VertexRef> owners;                  // class i of H is A_{owners[i]}
  std::vector<std::vector<VertexRef>> to_g;       // H vertex -> G vertex
};

AuxiliaryGraph build_h(const MultipartiteGraph& g, const ImcRecord& rec);

enum class LemmaStatus { pass, fail, not_applicable, budget };
std::string_view to_string(LemmaStatus s);

struct LemmaResult {
  std::string name;
  LemmaStatus status = LemmaStatus::not_applicable;
  std::string detail;
};

struct LemmaOptions {
  std::size_t h_transversal_limit = 64;
  std::size_t critical_edge_limit = 3;
  std::uint64_t budget = kDefaultBudget;  // per lemma
};

// Runs every structure check whose hypotheses hold at rec.level; the rest are
// not-applicable. Any fail is an implementation bug.
std::vector<LemmaResult> check_structure_lemmas(const MultipartiteGraph& g, const ImcRecord& rec,
                                                const LemmaOptions& opt = {});

// Seed through an edge whose removal creates an (r-d)-IT: I0 = both
// endpoints, T0 = (least (r-d)-IT of g - e) minus the first endpoint.
// Throws precondition_failed if g has an (r-d)-IT or g - e has none.
FeasiblePair seed_from_critical_edge(const MultipartiteGraph& g, std::size_t d, const Edge& e,
                                     std::uint64_t budget = kDefaultBudget);

bool is_critical_edge(const MultipartiteGraph& g, std::size_t d, const Edge& e,
                      std::uint64_t budget = kDefaultBudget);

// Certificate of no full IT built from a d = 0 run on a minimal IT-free set of
// classes. Throws precondition_failed if g has a full IT or an empty class.
NoItCertificate no_it_certificate(const MultipartiteGraph& g,
                                  std::uint64_t budget = kDefaultBudget);

std::string format_imc(const ImcRecord& rec);
std::string format_certificate(const MultipartiteGraph& g, const NoItCertificate& cert);
std::string format_lemmas(const std::vector<LemmaResult>& results);

}  // namespace pit
