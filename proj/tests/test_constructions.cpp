#include <doctest.h>

#include <algorithm>

#include "pit/bounds.hpp"
#include "pit/constructions.hpp"
#include "support.hpp"

using namespace pit;
namespace pt = pit::testing;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io_failure;
}

}  // namespace

TEST_CASE("Kdd base") {
  const auto built = build(Recipe::kdd(4));
  CHECK(built.graph == pt::complete_bipartite(4, 4));
  CHECK(built.claim.r == 2);
  CHECK(built.claim.defect == 1);
  CHECK(built.claim.n == 4);
  CHECK(built.claim.delta == 4);
  CHECK(built.claim.status == ClaimStatus::derived);
}

TEST_CASE("rows plus spine on K44") {
  const auto recipe = Recipe::rows_spine(Recipe::kdd(4), 3);
  const auto built = build(recipe);
  CHECK(built.graph.num_classes() == 6);
  CHECK(built.graph.class_sizes() == std::vector<std::size_t>(6, 5));
  CHECK(built.graph.max_degree() == 4);
  CHECK(built.claim.defect == 2);
  const auto cc = certify(recipe);
  CHECK(cc.claim.status == ClaimStatus::certified);
  CHECK(cc.measured_max_it == 4);
}

TEST_CASE("disjoint copies of K22") {
  const auto recipe = Recipe::copies(Recipe::kdd(2), 2);
  const auto c = claim_of(recipe);
  CHECK(c.r == 4);
  CHECK(c.defect == 2);
  CHECK(c.n == 2);
  CHECK(c.delta == 2);
  CHECK(certify(recipe).measured_max_it == 2);
}

TEST_CASE("bipartite blocks with an odd class count") {
  const auto built = build(Recipe::blocks(5, 3));
  CHECK(built.graph.num_classes() == 5);
  CHECK(built.graph.num_edges() == 18);
  CHECK(built.claim.defect == 2);
  CHECK(max_partial_it(built.graph).size == 3);
}

TEST_CASE("K_{D,D} certifies for small D") {
  for (std::size_t delta = 1; delta <= 6; ++delta) {
    const auto cc = certify(Recipe::kdd(delta));
    CHECK(cc.measured_max_it == 1);
    CHECK(cc.claim.n == delta);
  }
}

TEST_CASE("removing a spine edge refutes the claim") {
  const auto built = build(Recipe::rows_spine(Recipe::kdd(4), 3));
  auto edges = built.graph.edges();
  // The spine vertex of class 0 is (0,4); drop one of its spine edges.
  const auto it = std::find_if(edges.begin(), edges.end(), [](const Edge& e) {
    return e.a == VertexRef{0, 4} && e.b.index == 4;
  });
  REQUIRE(it != edges.end());
  edges.erase(it);
  const MultipartiteGraph broken(built.graph.class_sizes(), edges);
  try {
    certify_graph(broken, built.claim);
    FAIL("corrupted graph certified");
  } catch (const ClaimRefuted& e) {
    REQUIRE(e.witness().has_value());
    CHECK(e.witness()->size() == 5);
    CHECK(is_partial_it(broken, *e.witness()));
  }
}

TEST_CASE("claimed sizes match the construction formula") {
  CHECK(lower_bound_from_recipe(Recipe::main_construction(2, 2, 1, 0, 4)) == Rat(5));
  CHECK(claim_of(Recipe::main_construction(4, 1, 0, 0, 10)).n == 15);
  for (std::size_t delta = 1; delta <= 20; ++delta) {
    for (std::size_t d = 0; d <= 3; ++d) {
      for (std::size_t i = 1; i <= d + 2; ++i) {
        for (std::size_t k = 0; k < d + i; ++k) {
          const auto di = static_cast<std::int64_t>(d);
          const auto ii = static_cast<std::int64_t>(i);
          const auto ki = static_cast<std::int64_t>(k);
          if (!bounds::main_construction_valid(2, ii, di, ki)) continue;
          const auto c = claim_of(Recipe::main_construction(2, i, d, k, delta));
          CHECK(c.r == 2 * (d + i) + k);
          CHECK(c.defect == d + 1);
          CHECK(static_cast<std::int64_t>(c.n) ==
                bounds::main_construction_value(2, ii, di, ki, static_cast<std::int64_t>(delta)));
        }
      }
    }
  }
}

TEST_CASE("invalid recipes are rejected") {
  CHECK(error_of([] { claim_of(Recipe::add_kr(Recipe::kdd(6))); }) ==
        ErrorCode::construction_rejected);
  CHECK(error_of([] { claim_of(Recipe::rows_spine(Recipe::kdd(4), 1)); }) ==
        ErrorCode::construction_rejected);
  CHECK(error_of([] { claim_of(Recipe::three_layer(Recipe::kdd(4), 6, 2, 2)); }) ==
        ErrorCode::construction_rejected);
  CHECK(error_of([] { build(Recipe::main_construction(4, 1, 0, 0, 10)); }) ==
        ErrorCode::construction_rejected);
}

TEST_CASE("copies keep the class size, adding a clique layer grows it") {
  for (std::size_t delta = 1; delta <= 12; ++delta) {
    const auto base = Recipe::copies(Recipe::kdd(delta), 2);
    CHECK(claim_of(Recipe::copies(base, 3)).n == claim_of(base).n);
    const auto b = claim_of(base);
    if (delta >= b.r - 1) CHECK(claim_of(Recipe::add_kr(base)).n > b.n);
  }
}

TEST_CASE("small recipes always certify") {
  std::vector<RecipePtr> recipes;
  for (std::size_t delta = 1; delta <= 4; ++delta) {
    recipes.push_back(Recipe::kdd(delta));
    recipes.push_back(Recipe::copies(Recipe::kdd(delta), 2));
    recipes.push_back(Recipe::rows_spine(Recipe::kdd(delta), 2));
    recipes.push_back(Recipe::rows_spine(Recipe::kdd(delta), 3));
    recipes.push_back(Recipe::add_kr(Recipe::copies(Recipe::kdd(delta), 2)));
    recipes.push_back(Recipe::blowup(3, delta / 2 + 1));
    recipes.push_back(Recipe::blocks(4, delta));
    recipes.push_back(Recipe::main_construction(2, 2, 1, 1, delta));
    recipes.push_back(Recipe::three_layer(Recipe::kdd(delta), 4, 2, 2));
  }
  for (const auto& r : recipes) {
    const auto built = build(r);
    if (built.graph.num_vertices() > 36) continue;
    CAPTURE(serialize_recipe(r));
    CHECK_NOTHROW(certify_graph(built.graph, built.claim));
  }
}

TEST_CASE("spine vertices are complete across rows and independent within a row") {
  for (std::size_t delta : {4, 8}) {
    const auto built = build(Recipe::rows_spine(Recipe::kdd(delta), 3));
    const auto& g = built.graph;
    std::vector<VertexRef> spine;
    for (std::size_t p = 0; p < 6; ++p) {
      for (std::size_t i = delta; i < g.class_size(p); ++i) spine.push_back({p, i});
    }
    REQUIRE(spine.size() == 6 * (delta / 4));
    for (const auto& u : spine) {
      for (const auto& v : spine) {
        if (u.part == v.part) continue;
        CHECK(g.adjacent(u, v) == (u.part / 2 != v.part / 2));
      }
      // no edges into the row's own child vertices
      const std::size_t row = u.part / 2;
      for (std::size_t p = 2 * row; p < 2 * row + 2; ++p) {
        if (p == u.part) continue;
        for (std::size_t i = 0; i < delta; ++i) CHECK_FALSE(g.adjacent(u, {p, i}));
      }
    }
  }
}

TEST_CASE("small layer degree in the three-layer operator") {
  const std::size_t delta = 12;
  const std::size_t m = 4;
  const auto built = build(Recipe::three_layer(Recipe::kdd(delta), m, 2, 2));
  const auto& g = built.graph;
  const std::size_t r0 = 2;
  const std::size_t medium = delta / ((2 - 1) * r0);
  const std::size_t small = delta / ((m - 1) * r0);
  const std::size_t expect = (m - 1) * r0 * small;
  for (std::size_t p = 0; p < g.num_classes(); ++p) {
    CHECK(g.class_size(p) == delta + medium + small);
    for (std::size_t i = delta + medium; i < g.class_size(p); ++i) {
      std::size_t from_small = 0;
      for (const std::size_t w : g.neighbours(g.id({p, i}))) {
        if (g.ref(w).index >= delta + medium) ++from_small;
      }
      CHECK(from_small == expect);
      CHECK(expect <= delta);
    }
  }
  CHECK(g.max_degree() <= delta);
}

TEST_CASE("recipe text round trip") {
  const std::string text = "recipe 1\nkdd 4\nrows-spine 3\n";
  const auto r = parse_recipe(text);
  CHECK(serialize_recipe(r) == text);
  CHECK(serialize_recipe(parse_recipe("kdd 4; rows-spine 3  # f65")) == text);
  const std::string main_text = "recipe 1\nmain 2 2 1 1 6\n";
  CHECK(serialize_recipe(parse_recipe(main_text)) == main_text);
  CHECK(error_of([] { parse_recipe("rows-spine 3"); }) == ErrorCode::recipe_syntax);
  CHECK(error_of([] { parse_recipe("kdd 4; kdd 3"); }) == ErrorCode::recipe_syntax);
  CHECK(error_of([] { parse_recipe("kdd x"); }) == ErrorCode::recipe_syntax);
  CHECK(error_of([] { parse_recipe("frobnicate 1"); }) == ErrorCode::recipe_syntax);
  CHECK(error_of([] { parse_recipe("# nothing"); }) == ErrorCode::recipe_syntax);
}

TEST_CASE("claim text") {
  const auto c = parse_claim("6,2,5,4");
  CHECK(c.r == 6);
  CHECK(c.defect == 2);
  CHECK(c.n == 5);
  CHECK(c.delta == 4);
  CHECK(error_of([] { parse_claim("6,2,5"); }) != ErrorCode::io_failure);
}
