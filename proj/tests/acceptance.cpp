// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pit/bounds.hpp"
#include "pit/constructions.hpp"
#include "pit/imc.hpp"
#include "pit/solver.hpp"
#include "support.hpp"

using namespace pit;
namespace pt = pit::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::size_t defect_of(const MultipartiteGraph& g) {
  return g.num_classes() - max_partial_it(g).size - 1;
}

std::string str(auto v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// criterion 1
Outcome six_partite_construction() {
  Outcome out;
  for (std::size_t delta : {2, 3, 4, 5, 6, 8}) {
    const auto start = std::chrono::steady_clock::now();
    const std::string tag = "delta=" + str(delta) + ": ";
    const auto built = build(Recipe::rows_spine(Recipe::kdd(delta), 3));
    const auto& g = built.graph;
    const std::size_t size = delta + delta / 4;
    out.expect(g.num_classes() == 6, tag + "class count " + str(g.num_classes()));
    for (std::size_t p = 0; p < g.num_classes(); ++p) {
      out.expect(g.class_size(p) == size, tag + "class " + str(p) + " has " + str(g.class_size(p)));
    }
    out.expect(g.max_degree() <= delta, tag + "max degree " + str(g.max_degree()));
    const auto solved = max_partial_it(g);
    out.expect(solved.exhaustive, tag + "search not exhaustive");
    out.expect(solved.size == 4, tag + "max partial IT " + str(solved.size) + ", expected 4");
    out.expect(solved.size <= 4, tag + "found a 5-IT");
    const std::size_t formula = 5 * delta / 4;
    if (delta % 4 == 0) {
      out.expect(size == formula, tag + "class size differs from floor(5D/4)");
    } else {
      out.expect(size >= formula, tag + "class size below floor(5D/4)");
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.expect(secs < 5.0, tag + "took " + str(secs) + " s");
  }
  return out;
}

// criterion 2
Outcome base_cases() {
  Outcome out;
  for (std::size_t delta = 1; delta <= 6; ++delta) {
    const auto built = build(Recipe::kdd(delta));
    try {
      const auto cc = certify_graph(built.graph, parse_claim("2,1," + str(delta) + "," + str(delta)));
      out.expect(cc.measured_max_it == 1, "K_{D,D} max IT " + str(cc.measured_max_it));
    } catch (const Error& e) {
      out.expect(false, "K_{" + str(delta) + "," + str(delta) + "}: " + e.what());
    }
  }
  for (std::size_t r = 3; r <= 6; ++r) {
    const auto built = build(Recipe::blocks(r, 3));
    try {
      const auto cc = certify_graph(built.graph, built.claim);
      const std::size_t half_up = (r + 1) / 2;
      out.expect(cc.measured_max_it == half_up,
                 "blocks r=" + str(r) + ": max IT " + str(cc.measured_max_it));
      for (std::size_t d = 0; 2 * (d + 1) <= r; ++d) {
        out.expect(cc.measured_max_it <= r - (d + 1),
                   "blocks r=" + str(r) + " d=" + str(d) + ": bound violated");
      }
    } catch (const Error& e) {
      out.expect(false, "blocks r=" + str(r) + ": " + e.what());
    }
  }
  return out;
}

bool closed_form_applies(const bounds::Params& p) {
  if (p.q % 2 == 0 && p.q >= 4 * p.k) return true;
  if (p.q % 2 == 1 && p.q >= 6 * p.d + 6 * p.k + 7) return true;
  return p.r == 6 && p.d == 1;
}

std::int64_t closed_form_value(const bounds::Params& p) {
  const Rat two_delta(2 * p.delta);
  if (p.r == 6 && p.d == 1) return (Rat(5 * p.delta, 4)).floor();
  if (p.q % 2 == 0) return (two_delta * (Rat(1) - Rat(1, p.q))).floor();
  return (two_delta * (Rat(1) - Rat(1, p.q - 1))).floor();
}

// criterion 3
Outcome bounds_grid() {
  Outcome out;
  std::size_t points = 0;
  for (std::int64_t r = 2; r <= 60; ++r) {
    for (std::int64_t d = 0; d <= 8 && d < r; ++d) {
      for (std::int64_t delta = 1; delta <= 100; ++delta) {
        ++points;
        const auto p = bounds::decompose(r, d, delta);
        const std::string tag = "(" + str(r) + "," + str(d) + "," + str(delta) + ") ";
        const Rat gen = bounds::general_q_bound(p);
        out.expect(gen <= bounds::defect_averaging_bound(p), tag + "(a)");
        const bool odd = p.q >= 3 && p.q % 2 == 1;
        if (odd && p.q >= 6 * p.k) out.expect(bounds::odd_q_bound(p) <= gen, tag + "(b)");
        if (odd && p.k == 0) out.expect(bounds::odd_q_divisible_bound(p) <= gen, tag + "(c)");
        const auto s = bounds::summary(r, d, delta);
        out.expect(s.lower <= s.upper, tag + "(e) lower > upper");
        if (closed_form_applies(p)) {
          out.expect(s.exact, tag + "(e) not exact");
          const std::int64_t v = closed_form_value(p);
          out.expect(s.lower == v && s.upper == v, tag + "(e) value " + str(s.lower) + " vs " + str(v));
        }
        if (out.notes.size() > 20) return out;
      }
    }
  }
  std::vector<Rat> scales = {Rat(1), Rat(5, 4), Rat(3, 2)};
  for (std::int64_t q = 2; q <= 12; ++q) scales.push_back(Rat(2) - Rat(2, q));
  for (const Rat& c : scales) {
    if (c < Rat(1)) continue;
    for (std::int64_t n = 1; n <= 200; ++n) {
      const std::int64_t dval = bounds::convert(c, bounds::Conversion::delta_from_n, n);
      for (std::int64_t delta = 1; delta <= 200; ++delta) {
        const std::int64_t nval = bounds::convert(c, bounds::Conversion::n_from_delta, delta);
        // independent evaluation of floor(c*delta) and ceil(n/c)
        const std::int64_t fl = (c.num() * delta) / c.den();
        const std::int64_t ce = (n * c.den() + c.num() - 1) / c.num();
        out.expect(nval == fl && dval == ce, "(d) conversion mismatch at c=" + c.str());
        out.expect((n > nval) == (delta < dval),
                   "(d) c=" + c.str() + " n=" + str(n) + " delta=" + str(delta));
        if (out.notes.size() > 20) return out;
      }
    }
  }
  out.notes.push_back(str(points) + " grid points");
  return out;
}

// criterion 4
Outcome soundness_fuzz() {
  Outcome out;
  std::mt19937_64 rng(4);
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases = {{4, 1}, {5, 1}, {6, 1}, {6, 2}};
  for (const auto& [r, d] : cases) {
    const auto p = bounds::decompose(r, d, 3);
    const std::size_t n = static_cast<std::size_t>(bounds::general_q_bound(p).floor() + 1);
    out.notes.push_back("(" + str(r) + "," + str(d) + ") n>=" + str(n));
    for (int run = 0; run < 100; ++run) {
      auto sizes = pt::random_sizes(rng, static_cast<std::size_t>(r), n, n + 1);
      const auto g = pt::random_graph(rng, std::move(sizes), 3, 0.9);
      if (g.max_degree() > 3 || g.min_class_size() < n) {
        out.expect(false, "generator produced an out-of-range instance");
        continue;
      }
      const auto it = has_it_of_size(g, static_cast<std::size_t>(r - d));
      out.expect(it.has_value() && is_partial_it(g, *it),
                 "no (r-d)-IT for:\n" + serialize_mpg(g));
    }
  }
  return out;
}

// Checks conclusions of the extraction independently of the engine.
void check_record(Outcome& out, const std::string& tag, const MultipartiteGraph& g,
                  const ImcRecord& rec) {
  const std::size_t d = rec.d;
  const ClassSet s_i = class_support(rec.I);
  out.expect(s_i.size() >= 2, tag + "|S(I)| < 2");
  const ClassSet cover = set_union(s_i, rec.R);
  out.expect(rec.t == cover.size(), tag + "t mismatch");
  out.expect(dominates(g, rec.I, vertices_of_classes(g, cover)), tag + "domination fails");
  out.expect(rec.forest.acyclic, tag + "F_I has a cycle");
  out.expect(rec.forest.components.size() == d + 1, tag + "component count");
  for (const auto& comp : rec.forest.components) {
    std::size_t in_r = 0;
    for (const auto c : comp) in_r += rec.R.contains(c);
    out.expect(in_r == 1, tag + "component without exactly one R class");
  }
  out.expect(rec.I.size() <= 2 * (rec.t - d - 1), tag + "|I| > 2(t-d-1)");
  out.expect(rec.T.support() == set_difference(ClassSet([&] {
                                                  std::vector<std::size_t> all(g.num_classes());
                                                  for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
                                                  return all;
                                                }()),
                                                rec.R),
             tag + "S(T) changed");
  out.expect(check_feasible(g, seed_pair(g, rec.I, rec.T)).feasible, tag + "final pair infeasible");
  if (rec.level >= SetupLevel::setup_i) {
    out.expect(is_imc(g, rec.I), tag + "not an IMC above the threshold");
    out.expect(rec.I.size() == 2 * (rec.t - d - 1), tag + "|I| != 2(t-d-1)");
  }
}

// criterion 5
Outcome imc_suite() {
  Outcome out;
  const std::vector<std::tuple<std::string, MultipartiteGraph, std::size_t>> cases = {
      {"K44", pt::complete_bipartite(4, 4), 0},
      {"2xK33", pt::disjoint_kaa(2, 3), 1},
      {"six-partite D=4", build(Recipe::rows_spine(Recipe::kdd(4), 3)).graph, 1},
  };
  for (const auto& [name, g, d] : cases) {
    try {
      const auto rec = extract_imc(g, d);
      check_record(out, name + ": ", g, rec);
      out.notes.push_back(name + " level=" + std::string(to_string(rec.level)) +
                          " |I|=" + str(rec.I.size()) + " t=" + str(rec.t) +
                          " steps=" + str(rec.steps));
    } catch (const Error& e) {
      out.expect(false, name + ": " + e.what());
    }
  }
  return out;
}

std::vector<MultipartiteGraph> corpus() { return pt::no_it_corpus(6, 60, 16); }

// criterion 6
Outcome certificate_cross_check() {
  Outcome out;
  const auto graphs = corpus();
  out.notes.push_back(str(graphs.size()) + " instances");
  for (const auto& g : graphs) {
    try {
      const auto fast = no_it_certificate(g);
      const auto brute = no_it_certificate_brute(g);
      out.expect(verify_no_it_certificate(g, fast).valid && pt::certificate_clauses_hold(g, fast),
                 "invalid certificate from the run:\n" + serialize_mpg(g));
      out.expect(brute && verify_no_it_certificate(g, *brute).valid &&
                     pt::certificate_clauses_hold(g, *brute),
                 "invalid brute-force certificate:\n" + serialize_mpg(g));
    } catch (const Error& e) {
      out.expect(false, std::string(e.what()) + "\n" + serialize_mpg(g));
    }
  }
  return out;
}

// criterion 7
Outcome structure_lemmas() {
  Outcome out;
  std::vector<std::pair<MultipartiteGraph, std::size_t>> cases = {
      {pt::complete_bipartite(4, 4), 0},
      {pt::disjoint_kaa(2, 3), 1},
      {pt::disjoint_kaa(2, 4), 1},
      {pt::disjoint_kaa(3, 3), 2},
      {build(Recipe::rows_spine(Recipe::kdd(4), 3)).graph, 1},
  };
  for (auto& g : corpus()) {
    const std::size_t d = defect_of(g);
    cases.emplace_back(std::move(g), d);
  }
  const std::vector<std::string> required = {"avsize-i", "avsize-ii", "avsize-iii", "samecomp-ii",
                                             "notdomsamecomp"};
  std::size_t instances = 0;
  std::map<std::string, std::size_t> passes;
  for (const auto& [g, d] : cases) {
    if (setup_level(g, d) < SetupLevel::setup_ii) continue;
    ++instances;
    const auto rec = extract_imc(g, d);
    for (const auto& r : check_structure_lemmas(g, rec)) {
      const bool must = std::find(required.begin(), required.end(), r.name) != required.end();
      if (r.status == LemmaStatus::pass) ++passes[r.name];
      out.expect(r.status != LemmaStatus::fail, r.name + " failed: " + r.detail + "\n" + serialize_mpg(g));
      out.expect(r.status != LemmaStatus::budget, r.name + " ran out of budget");
      if (must) out.expect(r.status == LemmaStatus::pass, r.name + " not run on a setup-ii instance");
    }
  }
  out.expect(instances > 0, "no setup-ii instance in the corpus");
  out.notes.push_back(str(instances) + " setup-ii instances");
  std::string counts;
  for (const auto& [name, n] : passes) counts += name + "=" + str(n) + " ";
  out.notes.push_back("passes: " + counts);
  return out;
}

// criterion 8
Outcome round_trip_and_determinism() {
  Outcome out;
  std::mt19937_64 rng(8);
  std::vector<MultipartiteGraph> graphs;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t r = 1 + rng() % 7;
    graphs.push_back(pt::random_graph(rng, pt::random_sizes(rng, r, 0, 6), 1 + rng() % 5, 0.5));
  }
  for (const auto& g : graphs) {
    const std::string text = serialize_mpg(g);
    const auto back = parse_mpg(text);
    out.expect(back == g && serialize_mpg(back) == text, "round trip failed:\n" + text);
  }
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& g = graphs[i];
    const auto a = max_partial_it(g);
    const auto b = max_partial_it(g);
    out.expect(a.size == b.size && to_string(a.witness) == to_string(b.witness),
               "solver output differs between runs");
  }
  for (const auto& g : pt::no_it_corpus(88, 20, 14)) {
    const std::size_t d = defect_of(g);
    const std::string a = format_imc(extract_imc(g, d));
    const std::string b = format_imc(extract_imc(g, d));
    out.expect(a == b, "IMC output differs between runs");
    out.expect(format_certificate(g, no_it_certificate(g)) ==
                   format_certificate(g, no_it_certificate(g)),
               "certificate output differs between runs");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit_secs;
  };
  const std::vector<Criterion> criteria = {
      {"1 six-partite construction reproduction", six_partite_construction, 30},
      {"2 base cases", base_cases, 1},
      {"3 bounds grid", bounds_grid, 30},
      {"4 soundness fuzz", soundness_fuzz, 60},
      {"5 algorithm and IMC suite", imc_suite, 120},
      {"6 certificate cross-validation", certificate_cross_check, 60},
      {"7 structure lemmas", structure_lemmas, 120},
      {"8 round trip and determinism", round_trip_and_determinism, 30},
  };
  int failures = 0;
  for (const auto& [name, fn, limit] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("uncaught: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit) {
      o.ok = false;
      o.notes.push_back("exceeded the " + str(limit) + " s limit");
    }
    std::printf("%s criterion %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs);
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    failures += !o.ok;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
