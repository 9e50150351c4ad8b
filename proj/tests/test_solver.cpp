#include <doctest.h>

#include "pit/bounds.hpp"
#include "pit/solver.hpp"
#include "support.hpp"

using namespace pit;
namespace pt = pit::testing;

TEST_CASE("max partial IT agrees with subset enumeration") {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 300) {
    const std::size_t r = 2 + rng() % 5;
    const auto g = pt::random_graph(rng, pt::random_sizes(rng, r, 0, 4), 1 + rng() % 4, 0.7);
    if (g.num_vertices() > 14) continue;
    ++checked;
    const auto res = max_partial_it(g);
    REQUIRE(res.exhaustive);
    CHECK(res.size == pt::naive_max_partial_it(g));
    CHECK(res.witness.size() == res.size);
    CHECK(is_partial_it(g, res.witness));
    CHECK(is_independent(g, res.witness.vertices()));
  }
}

TEST_CASE("witness is the lexicographically least optimum") {
  const auto g = pt::complete_bipartite(4, 4);
  const auto res = max_partial_it(g);
  CHECK(res.size == 1);
  CHECK(to_string(res.witness) == "{(0,0)}");
}

TEST_CASE("solver output is deterministic") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = pt::random_graph(rng, pt::random_sizes(rng, 5, 1, 4), 3, 0.6);
    const auto a = max_partial_it(g);
    const auto b = max_partial_it(g);
    CHECK(a.size == b.size);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("has_it_of_size matches the maximum") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = pt::random_graph(rng, pt::random_sizes(rng, 4, 1, 3), 3, 0.7);
    const std::size_t best = pt::naive_max_partial_it(g);
    for (std::size_t s = 0; s <= g.num_classes(); ++s) {
      const auto t = has_it_of_size(g, s);
      CHECK(t.has_value() == (s <= best));
      if (t) {
        CHECK(t->size() == s);
        CHECK(is_partial_it(g, *t));
      }
    }
  }
}

TEST_CASE("avoidance IT agrees with a filtered exhaustive search") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = pt::random_graph(rng, pt::random_sizes(rng, 4, 1, 3), 3, 0.6);
    std::vector<std::size_t> u;
    for (std::size_t p = 0; p < 4; ++p) {
      if (rng() % 3) u.push_back(p);
    }
    std::vector<VertexRef> forbidden;
    for (const auto& v : pt::all_vertices(g)) {
      if (rng() % 4 == 0) forbidden.push_back(v);
    }
    const VertexSet fset(forbidden);
    std::vector<VertexRef> chosen;
    const bool expect =
        pt::naive_has_it(g, u, [&](const VertexRef& v) { return !fset.contains(v); }, chosen);
    const auto got = avoidance_it(g, ClassSet(u), fset);
    CHECK(got.has_value() == expect);
    if (got) {
      CHECK(got->support() == ClassSet(u));
      CHECK(is_partial_it(g, *got));
      for (const auto& v : got->picks()) CHECK_FALSE(fset.contains(v));
    }
  }
}

TEST_CASE("brute-force certificates on small examples") {
  SUBCASE("K11") {
    const auto cert = no_it_certificate_brute(pt::complete_bipartite(1, 1));
    REQUIRE(cert);
    CHECK(cert->classes == ClassSet{0, 1});
    CHECK(cert->edges.size() == 1);
  }
  SUBCASE("K22") {
    const auto g = pt::complete_bipartite(2, 2);
    const auto cert = no_it_certificate_brute(g);
    REQUIRE(cert);
    CHECK(cert->classes == ClassSet{0, 1});
    CHECK(cert->edges.size() == 1);
    CHECK(verify_no_it_certificate(g, *cert).valid);
  }
  SUBCASE("two disjoint K22") {
    const auto g = pt::disjoint_kaa(2, 2);
    const auto cert = no_it_certificate_brute(g);
    REQUIRE(cert);
    CHECK(cert->classes == ClassSet{0, 1});
    CHECK(cert->edges.size() == 1);
  }
  SUBCASE("a graph with a full IT is rejected") {
    CHECK_THROWS_AS(no_it_certificate_brute(MultipartiteGraph({1, 1}, {})), Error);
  }
}

TEST_CASE("certificate verifier agrees with the clause oracle") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = pt::random_graph(rng, pt::random_sizes(rng, 3, 1, 3), 3, 0.8);
    const auto edges = g.edges();
    NoItCertificate cert;
    std::vector<std::size_t> s;
    for (std::size_t p = 0; p < 3; ++p) {
      if (rng() & 1) s.push_back(p);
    }
    cert.classes = ClassSet(s);
    for (const auto& e : edges) {
      if (rng() % 3 == 0) cert.edges.push_back(e);
    }
    CHECK(verify_no_it_certificate(g, cert).valid == pt::certificate_clauses_hold(g, cert));
  }
}

TEST_CASE("budget exhaustion is an explicit error") {
  const auto g = pt::disjoint_kaa(3, 3);
  CHECK_THROWS_AS(max_partial_it(g, 2), BudgetExhausted);
}

// Class sizes strictly above max{2D(1-(4d+5)/(4r)), 2D(1-1/q)} force an (r-d)-IT.
TEST_CASE("large classes force an (r-d)-IT") {
  std::mt19937_64 rng(26);
  int runs = 0;
  while (runs < 100) {
    const std::int64_t r = 2 + static_cast<std::int64_t>(rng() % 5);
    const std::int64_t d = static_cast<std::int64_t>(rng() % ((r + 1) / 2));
    if (2 * d >= r) continue;
    const std::int64_t delta = 1 + static_cast<std::int64_t>(rng() % 3);
    const auto p = bounds::decompose(r, d, delta);
    const Rat a = Rat(2 * delta) * (Rat(1) - Rat(4 * d + 5, 4 * r));
    const Rat b = Rat(2 * delta) * (Rat(1) - Rat(1, p.q));
    const std::size_t n = static_cast<std::size_t>(max(a, b).floor() + 1);
    const auto g = pt::random_graph(rng, std::vector<std::size_t>(r, n + rng() % 2),
                                    static_cast<std::size_t>(delta), 0.8);
    ++runs;
    CHECK(max_partial_it(g).size >= static_cast<std::size_t>(r - d));
  }
}
