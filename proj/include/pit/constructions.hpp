#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pit/error.hpp"
#include "pit/graph.hpp"
#include "pit/rational.hpp"
#include "pit/transversal.hpp"

namespace pit {

enum class ClaimStatus { derived, trusted, certified };
std::string_view to_string(ClaimStatus s);

// One feasible point of n(r, D, delta): r classes of size >= n, maximum
// degree <= delta and no independent transversal larger than r - D.
struct Claim {
  std::size_t r = 0;
  std::size_t defect = 1;
  std::size_t n = 0;
  std::size_t delta = 0;
  ClaimStatus status = ClaimStatus::derived;

  friend bool operator==(const Claim&, const Claim&) = default;
};

std::string to_string(const Claim& c);
// "r,D,n,delta"
Claim parse_claim(const std::string& text);

class Recipe;
using RecipePtr = std::shared_ptr<const Recipe>;

namespace recipe {
struct Kdd { std::size_t delta; };
struct Blowup { std::size_t m; std::size_t s; };
struct Blocks { std::size_t r; std::size_t delta; };
struct File { std::string path; Claim claim; };
struct AddKr { RecipePtr child; };
struct Copies { RecipePtr child; std::size_t m; };
struct RowsSpine { RecipePtr child; std::size_t m; };
struct ThreeLayer { RecipePtr child; std::size_t m; std::size_t j; std::size_t l; };
// Blow-up family with r = q(d+i) + k. `base` is required unless q = 2.
struct MainConstruction {
  std::size_t q, i, d, k, delta;
  RecipePtr base;
};
}  // namespace recipe

// Construction recipe AST. Every node except the bases wraps one child.
class Recipe {
 public:
  using Node = std::variant<recipe::Kdd, recipe::Blowup, recipe::Blocks, recipe::File,
                            recipe::AddKr, recipe::Copies, recipe::RowsSpine,
                            recipe::ThreeLayer, recipe::MainConstruction>;

  explicit Recipe(Node node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return node_; }

  static RecipePtr kdd(std::size_t delta);
  static RecipePtr blowup(std::size_t m, std::size_t s);
  static RecipePtr blocks(std::size_t r, std::size_t delta);
  static RecipePtr file(std::string path, Claim claim);
  static RecipePtr add_kr(RecipePtr child);
  static RecipePtr copies(RecipePtr child, std::size_t m);
  static RecipePtr rows_spine(RecipePtr child, std::size_t m);
  static RecipePtr three_layer(RecipePtr child, std::size_t m, std::size_t j, std::size_t l);
  static RecipePtr main_construction(std::size_t q, std::size_t i, std::size_t d,
                                     std::size_t k, std::size_t delta,
                                     RecipePtr base = nullptr);

 private:
  Node node_;
};

// Claimed (r, D, n, delta) from the construction formulas alone. Throws
// Error(construction_rejected) naming the violated hypothesis.
Claim claim_of(const RecipePtr& recipe);

// Claimed n as an exact value.
Rat lower_bound_from_recipe(const RecipePtr& recipe);

struct BuiltConstruction {
  MultipartiteGraph graph;
  Claim claim;
};

BuiltConstruction build(const RecipePtr& recipe);

// Line-oriented recipe text: optional "recipe 1" header, then one operator per
// line, the first line a base and every later line wrapping the result so far.
RecipePtr parse_recipe(std::string_view text);
std::string serialize_recipe(const RecipePtr& recipe);

class ClaimRefuted : public Error {
 public:
  ClaimRefuted(const std::string& what, std::optional<Transversal> witness)
      : Error(ErrorCode::claim_refuted, "claim refuted: " + what),
        witness_(std::move(witness)) {}

  const std::optional<Transversal>& witness() const noexcept { return witness_; }

 private:
  std::optional<Transversal> witness_;
};

struct CertifiedClaim {
  Claim claim;                   // status == certified
  std::size_t measured_max_it = 0;
  Transversal max_it_witness;
  std::size_t measured_max_degree = 0;
  std::size_t measured_min_class = 0;
};

// Re-checks class count and sizes, maximum degree, and (exhaustively) that no
// independent transversal exceeds r - D. Throws ClaimRefuted on any mismatch
// and BudgetExhausted if the search does not finish.
CertifiedClaim certify_graph(const MultipartiteGraph& g, const Claim& claim,
                             std::uint64_t budget = kDefaultBudget);
CertifiedClaim certify(const RecipePtr& recipe, std::uint64_t budget = kDefaultBudget);

}  // namespace pit
