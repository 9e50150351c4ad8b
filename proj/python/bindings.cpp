#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pit/bounds.hpp"
#include "pit/constructions.hpp"
#include "pit/imc.hpp"
#include "pit/solver.hpp"

namespace py = pybind11;

namespace {

using VertexTuple = std::pair<std::size_t, std::size_t>;
using EdgeTuple = std::pair<VertexTuple, VertexTuple>;

VertexTuple tup(const pit::VertexRef& v) { return {v.part, v.index}; }

std::vector<VertexTuple> tuples(const pit::VertexSet& s) {
  std::vector<VertexTuple> out;
  for (const auto& v : s) out.push_back(tup(v));
  return out;
}

std::vector<VertexTuple> tuples(const pit::Transversal& t) {
  std::vector<VertexTuple> out;
  for (const auto& v : t.picks()) out.push_back(tup(v));
  return out;
}

pit::MultipartiteGraph make_graph(std::vector<std::size_t> sizes,
                                  const std::vector<EdgeTuple>& edges) {
  std::vector<pit::Edge> es;
  for (const auto& [a, b] : edges) {
    es.emplace_back(pit::VertexRef{a.first, a.second}, pit::VertexRef{b.first, b.second});
  }
  return pit::MultipartiteGraph(std::move(sizes), es);
}

py::dict claim_dict(const pit::Claim& c) {
  py::dict d;
  d["r"] = c.r;
  d["defect"] = c.defect;
  d["n"] = c.n;
  d["delta"] = c.delta;
  d["status"] = std::string(pit::to_string(c.status));
  return d;
}

py::dict imc_dict(const pit::ImcRecord& rec) {
  py::dict d;
  d["d"] = rec.d;
  d["I"] = tuples(rec.I);
  d["T"] = tuples(rec.T);
  d["R"] = rec.R.items();
  d["t"] = rec.t;
  d["is_imc"] = rec.is_imc;
  d["level"] = std::string(pit::to_string(rec.level));
  d["steps"] = rec.steps;
  std::vector<std::pair<VertexTuple, VertexTuple>> matching;
  for (const auto& [v, w] : rec.matching) matching.emplace_back(tup(v), tup(w));
  d["matching"] = matching;
  std::vector<std::vector<std::size_t>> comps;
  for (const auto& c : rec.forest.components) comps.push_back(c.items());
  d["components"] = comps;
  d["forest_edges"] = rec.forest.edges;
  py::dict av;
  for (const auto& [v, a] : rec.av) av[py::cast(tup(v))] = tuples(a);
  d["av"] = av;
  d["twice_dominated"] = tuples(rec.twice_dominated);
  d["text"] = pit::format_imc(rec);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial independent transversals in multipartite graphs";

  // Translators registered later are tried first, so the base goes first.
  auto base = py::register_exception<pit::Error>(m, "PitError");
  py::register_exception<pit::BudgetExhausted>(m, "BudgetExhausted", base.ptr());
  py::register_exception<pit::ClaimRefuted>(m, "ClaimRefuted", base.ptr());

  py::class_<pit::MultipartiteGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("sizes"), py::arg("edges"))
      .def_property_readonly("num_classes", &pit::MultipartiteGraph::num_classes)
      .def_property_readonly("num_vertices", &pit::MultipartiteGraph::num_vertices)
      .def_property_readonly("num_edges", &pit::MultipartiteGraph::num_edges)
      .def_property_readonly("class_sizes", &pit::MultipartiteGraph::class_sizes)
      .def_property_readonly("max_degree", &pit::MultipartiteGraph::max_degree)
      .def_property_readonly("min_class_size", &pit::MultipartiteGraph::min_class_size)
      .def("edges",
           [](const pit::MultipartiteGraph& g) {
             std::vector<EdgeTuple> out;
             for (const auto& e : g.edges()) out.emplace_back(tup(e.a), tup(e.b));
             return out;
           })
      .def("to_mpg", &pit::serialize_mpg)
      .def_static("from_mpg", [](const std::string& text) { return pit::parse_mpg(text); })
      .def("__eq__", [](const pit::MultipartiteGraph& a, const pit::MultipartiteGraph& b) {
        return a == b;
      });

  m.def(
      "max_partial_it",
      [](const pit::MultipartiteGraph& g, std::uint64_t budget) {
        const auto res = pit::max_partial_it(g, budget);
        return py::make_tuple(res.size, tuples(res.witness));
      },
      py::arg("graph"), py::arg("budget") = pit::kDefaultBudget,
      "Size and lexicographically least witness of a maximum partial IT.");

  m.def(
      "has_it_of_size",
      [](const pit::MultipartiteGraph& g, std::size_t s, std::uint64_t budget)
          -> std::optional<std::vector<VertexTuple>> {
        if (auto t = pit::has_it_of_size(g, s, budget)) return tuples(*t);
        return std::nullopt;
      },
      py::arg("graph"), py::arg("size"), py::arg("budget") = pit::kDefaultBudget);

  m.def(
      "bounds_summary",
      [](std::int64_t r, std::int64_t d, std::int64_t delta) {
        const auto rep = pit::bounds::summary(r, d, delta);
        py::dict out;
        out["q"] = rep.params.q;
        out["k"] = rep.params.k;
        out["lower"] = rep.lower;
        out["lower_sources"] = rep.lower_sources;
        out["upper"] = rep.upper;
        out["upper_sources"] = rep.upper_sources;
        out["exact"] = rep.exact;
        out["closed_forms"] = rep.closed_forms;
        return out;
      },
      py::arg("r"), py::arg("d"), py::arg("delta"));

  m.def("full_it_threshold", &pit::bounds::full_it_threshold, py::arg("r"), py::arg("delta"));

  m.def(
      "build",
      [](const std::string& recipe) {
        auto built = pit::build(pit::parse_recipe(recipe));
        return py::make_tuple(std::move(built.graph), claim_dict(built.claim));
      },
      py::arg("recipe"), "Build a recipe (lines or ';'-separated) into (graph, claim).");

  m.def(
      "claim_of",
      [](const std::string& recipe) { return claim_dict(pit::claim_of(pit::parse_recipe(recipe))); },
      py::arg("recipe"));

  m.def(
      "certify",
      [](const pit::MultipartiteGraph& g, const std::string& claim, std::uint64_t budget) {
        const auto cc = pit::certify_graph(g, pit::parse_claim(claim), budget);
        py::dict out = claim_dict(cc.claim);
        out["max_it"] = cc.measured_max_it;
        out["witness"] = tuples(cc.max_it_witness);
        return out;
      },
      py::arg("graph"), py::arg("claim"), py::arg("budget") = pit::kDefaultBudget,
      "Certify 'r,D,n,delta'; raises ClaimRefuted on failure.");

  m.def(
      "extract_imc",
      [](const pit::MultipartiteGraph& g, std::size_t d, std::uint64_t budget) {
        return imc_dict(pit::extract_imc(g, d, budget));
      },
      py::arg("graph"), py::arg("d"), py::arg("budget") = pit::kDefaultBudget);

  m.def(
      "check_structure_lemmas",
      [](const pit::MultipartiteGraph& g, std::size_t d, std::uint64_t budget) {
        const auto rec = pit::extract_imc(g, d, budget);
        pit::LemmaOptions opt;
        opt.budget = budget;
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : pit::check_structure_lemmas(g, rec, opt)) {
          out.emplace_back(r.name, std::string(pit::to_string(r.status)));
        }
        return out;
      },
      py::arg("graph"), py::arg("d"), py::arg("budget") = pit::kDefaultBudget);

  m.def(
      "no_it_certificate",
      [](const pit::MultipartiteGraph& g, bool brute, std::uint64_t budget) {
        pit::NoItCertificate cert;
        if (brute) {
          auto c = pit::no_it_certificate_brute(g, budget);
          if (!c) throw pit::InternalAssertion("brute-force search found no certificate");
          cert = *c;
        } else {
          cert = pit::no_it_certificate(g, budget);
        }
        std::vector<EdgeTuple> edges;
        for (const auto& e : cert.edges) edges.emplace_back(tup(e.a), tup(e.b));
        const auto verdict = pit::verify_no_it_certificate(g, cert);
        return py::make_tuple(cert.classes.items(), edges, verdict.valid);
      },
      py::arg("graph"), py::arg("brute") = false, py::arg("budget") = pit::kDefaultBudget,
      "(S, Z, valid) showing that no full IT exists.");
}
