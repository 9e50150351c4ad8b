// pit: build, certify and analyse partial independent transversals.
//
// Results go to stdout, the resolved configuration and diagnostics to stderr.
// Exit codes: 0 ok, 1 usage or input error, 2 claim refuted, 3 budget
// exhausted, 4 precondition or hypothesis not met, 5 internal assertion.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pit/bounds.hpp"
#include "pit/constructions.hpp"
#include "pit/imc.hpp"
#include "pit/solver.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kRefuted = 2, kBudget = 3, kPrecondition = 4, kInternal = 5 };

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PIT_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw pit::Error(pit::ErrorCode::invalid_argument, "PIT_BUDGET is not a number");
    }
  }
  return pit::kDefaultBudget;
}

void echo(const std::string& line) { std::cerr << "# " << line << "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pit::Error(pit::ErrorCode::io_failure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// An existing file is read; anything else is an inline recipe with ';' as
// the line separator.
pit::RecipePtr load_recipe(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return pit::parse_recipe(read_text(arg));
  return pit::parse_recipe(arg);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::int64_t v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw pit::Error(pit::ErrorCode::invalid_argument, "bad range '" + text + "'");
  }
}

pit::Edge parse_edge(const std::string& text) {
  std::size_t v[4];
  char sep[3] = {};
  std::istringstream in(text);
  in >> v[0] >> sep[0] >> v[1] >> sep[1] >> v[2] >> sep[2] >> v[3];
  if (!in || sep[0] != ',' || sep[1] != ',' || sep[2] != ',') {
    throw pit::Error(pit::ErrorCode::invalid_argument, "edge must be p1,i1,p2,i2: " + text);
  }
  return pit::Edge(pit::VertexRef{v[0], v[1]}, pit::VertexRef{v[2], v[3]});
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

// Field quoting for CSV; only needed when a field holds a comma or quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& out, const std::string& format) const {
    if (format == "csv") {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << "\n";
      };
      line(header);
      for (const auto& r : rows) line(r);
      return;
    }
    auto line = [&](const std::vector<std::string>& cells) {
      out << "|";
      for (const auto& c : cells) out << " " << c << " |";
      out << "\n";
    };
    line(header);
    out << "|";
    for (std::size_t i = 0; i < header.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : rows) line(r);
  }
};

std::vector<std::string> bound_row(const pit::bounds::BoundReport& rep) {
  const auto& p = rep.params;
  return {std::to_string(p.r),       std::to_string(p.d),
          std::to_string(p.delta),   std::to_string(p.q),
          std::to_string(p.k),       std::to_string(rep.lower),
          join(rep.lower_sources, " / "), std::to_string(rep.upper),
          join(rep.upper_sources, " / "), rep.exact ? "exact" : "open",
          rep.closed_forms.empty() ? "-" : join(rep.closed_forms, " / ")};
}

int cmd_construct(const std::string& recipe_arg, const std::string& out_path) {
  echo("construct recipe=" + recipe_arg + " out=" + out_path);
  const pit::RecipePtr recipe = load_recipe(recipe_arg);
  const pit::BuiltConstruction built = pit::build(recipe);
  pit::write_mpg_file(out_path, built.graph);
  const pit::Claim& c = built.claim;
  std::ofstream side(out_path + ".claim", std::ios::binary);
  if (!side) throw pit::Error(pit::ErrorCode::io_failure, "cannot write " + out_path + ".claim");
  side << c.r << "," << c.defect << "," << c.n << "," << c.delta << "\n";
  side << "# status " << pit::to_string(c.status) << "\n";
  side << pit::serialize_recipe(recipe);
  std::cout << "claim " << pit::to_string(c) << "\n";
  std::cout << "vertices " << built.graph.num_vertices() << " edges " << built.graph.num_edges()
            << "\n";
  return kOk;
}

int cmd_verify(const std::string& graph, const std::string& claim_text, std::uint64_t budget) {
  echo("verify graph=" + graph + " claim=" + claim_text + " budget=" + std::to_string(budget));
  const pit::MultipartiteGraph g = pit::read_mpg_file(graph);
  const pit::Claim claim = pit::parse_claim(claim_text);
  try {
    const pit::CertifiedClaim cc = pit::certify_graph(g, claim, budget);
    std::cout << "certified " << pit::to_string(cc.claim) << "\n";
    std::cout << "measured max_it=" << cc.measured_max_it
              << " max_degree=" << cc.measured_max_degree
              << " min_class=" << cc.measured_min_class << " exhaustive=yes\n";
    std::cout << "witness " << pit::to_string(cc.max_it_witness) << "\n";
    return kOk;
  } catch (const pit::ClaimRefuted& e) {
    std::cout << "refuted " << e.what() << "\n";
    if (e.witness()) std::cout << "witness " << pit::to_string(*e.witness()) << "\n";
    return kRefuted;
  }
}

int cmd_solve(const std::string& graph, std::optional<std::size_t> defect, std::uint64_t budget) {
  echo("solve graph=" + graph + " defect=" + (defect ? std::to_string(*defect) : "none") +
       " budget=" + std::to_string(budget));
  const pit::MultipartiteGraph g = pit::read_mpg_file(graph);
  const pit::SolveResult res = pit::max_partial_it(g, budget);
  std::cout << "size " << res.size << "\n";
  std::cout << "witness " << pit::to_string(res.witness) << "\n";
  std::cout << "exhaustive " << (res.exhaustive ? "yes" : "no") << "\n";
  if (defect) {
    if (*defect > g.num_classes()) {
      throw pit::Error(pit::ErrorCode::invalid_argument, "defect exceeds the class count");
    }
    const std::size_t want = g.num_classes() - *defect;
    std::cout << "it_of_size " << want << " " << (res.size >= want ? "yes" : "no") << "\n";
  }
  return kOk;
}

int cmd_bounds(std::int64_t r, std::int64_t d, std::int64_t delta, bool grid,
               const std::string& format) {
  echo("bounds r=" + std::to_string(r) + " d=" + std::to_string(d) + " delta=" +
       std::to_string(delta) + " grid=" + (grid ? "yes" : "no") + " format=" + format);
  Table t;
  t.header = {"r", "d", "delta", "q", "k", "lower", "lower_source", "upper", "upper_source",
              "status", "closed_forms"};
  if (!grid) {
    t.rows.push_back(bound_row(pit::bounds::summary(r, d, delta)));
  } else {
    for (std::int64_t rr = 2; rr <= r; ++rr) {
      for (std::int64_t dd = 0; dd <= std::min(d, rr - 1); ++dd) {
        for (std::int64_t x = 1; x <= delta; ++x) {
          t.rows.push_back(bound_row(pit::bounds::summary(rr, dd, x)));
        }
      }
    }
  }
  t.print(std::cout, format);
  return kOk;
}

int cmd_imc(const std::string& graph, std::size_t d, bool lemmas, const std::string& edge,
            std::uint64_t budget) {
  echo("imc graph=" + graph + " d=" + std::to_string(d) + " check_lemmas=" +
       (lemmas ? "yes" : "no") + " critical_edge=" + (edge.empty() ? "none" : edge) +
       " budget=" + std::to_string(budget));
  const pit::MultipartiteGraph g = pit::read_mpg_file(graph);
  pit::ImcRecord rec;
  if (edge.empty()) {
    rec = pit::extract_imc(g, d, budget);
  } else {
    const pit::Edge e = parse_edge(edge);
    const pit::FeasiblePair seed = pit::seed_from_critical_edge(g, d, e, budget);
    rec = pit::extract_imc(g, d, seed, budget);
    if (!rec.I.contains(e.a) || !rec.I.contains(e.b)) {
      throw pit::InternalAssertion("IMC seeded at a critical edge does not contain it");
    }
  }
  std::cout << pit::format_imc(rec);
  if (lemmas) {
    pit::LemmaOptions opt;
    opt.budget = budget;
    const auto results = pit::check_structure_lemmas(g, rec, opt);
    std::cout << "lemmas:\n" << pit::format_lemmas(results);
    for (const auto& r : results) {
      if (r.status == pit::LemmaStatus::fail) return kInternal;
    }
  }
  return kOk;
}

int cmd_certify(const std::string& graph, std::uint64_t budget) {
  echo("certify graph=" + graph + " budget=" + std::to_string(budget));
  const pit::MultipartiteGraph g = pit::read_mpg_file(graph);
  if (auto it = pit::has_it_of_size(g, g.num_classes(), budget)) {
    std::cout << "full IT exists " << pit::to_string(*it) << "\n";
    return kPrecondition;
  }
  const pit::NoItCertificate cert = pit::no_it_certificate(g, budget);
  std::cout << pit::format_certificate(g, cert);
  return kOk;
}

int cmd_table(const std::string& preset, const std::string& range, const std::string& format,
              std::uint64_t budget) {
  echo("table preset=" + preset + " delta=" + range + " format=" + format +
       " budget=" + std::to_string(budget));
  if (preset != "f65") throw pit::Error(pit::ErrorCode::invalid_argument, "unknown preset " + preset);
  const auto [lo, hi] = parse_range(range);
  if (lo < 1 || hi < lo) throw pit::Error(pit::ErrorCode::invalid_argument, "bad delta range");
  Table t;
  t.header = {"delta", "class_size", "formula", "max_degree", "max_it", "r_minus_D", "status"};
  for (std::int64_t delta = lo; delta <= hi; ++delta) {
    const auto recipe = pit::Recipe::rows_spine(pit::Recipe::kdd(static_cast<std::size_t>(delta)), 3);
    const pit::BuiltConstruction built = pit::build(recipe);
    const pit::CertifiedClaim cc = pit::certify_graph(built.graph, built.claim, budget);
    t.rows.push_back({std::to_string(delta), std::to_string(cc.measured_min_class),
                      std::to_string(5 * delta / 4), std::to_string(cc.measured_max_degree),
                      std::to_string(cc.measured_max_it),
                      std::to_string(cc.claim.r - cc.claim.defect),
                      std::string(pit::to_string(cc.claim.status))});
  }
  t.print(std::cout, format);
  return kOk;
}

int exit_code_for(const pit::Error& e) {
  switch (e.code()) {
    case pit::ErrorCode::budget_exhausted: return kBudget;
    case pit::ErrorCode::claim_refuted: return kRefuted;
    case pit::ErrorCode::precondition_failed:
    case pit::ErrorCode::hypothesis_not_met:
    case pit::ErrorCode::construction_rejected: return kPrecondition;
    case pit::ErrorCode::internal_assertion: return kInternal;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial independent transversals: constructions, bounds and IMC analysis"};
  app.require_subcommand(1);

  std::string recipe, out, graph, claim, edge, format = "md", preset = "f65", range = "1..12";
  std::uint64_t budget = 0;
  std::size_t defect = 0, imc_d = 0;
  std::int64_t r = 0, d = 0, delta = 0;
  bool grid = false, lemmas = false;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget, "Search node budget (default $PIT_BUDGET or 200000000)");
  };

  auto* construct = app.add_subcommand("construct", "Build a construction and write MPG + claim");
  construct->add_option("--recipe", recipe, "Recipe file or inline recipe (';'-separated)")->required();
  construct->add_option("--out", out, "Output MPG path")->required();

  auto* verify = app.add_subcommand("verify", "Certify a claim r,D,n,delta on a graph");
  verify->add_option("--graph", graph)->required();
  verify->add_option("--claim", claim, "r,D,n,delta")->required();
  add_budget(verify);

  auto* solve = app.add_subcommand("solve", "Maximum partial IT");
  solve->add_option("--graph", graph)->required();
  auto* defect_opt = solve->add_option("--defect", defect, "Report whether an (r-d)-IT exists");
  add_budget(solve);

  auto* bounds = app.add_subcommand("bounds", "Evaluate lower and upper bounds");
  bounds->add_option("--r", r)->required();
  bounds->add_option("--d", d)->required();
  bounds->add_option("--delta", delta)->required();
  bounds->add_flag("--grid", grid, "Treat r, d, delta as maxima and print every point");
  bounds->add_option("--format", format)->check(CLI::IsMember({"md", "csv"}));

  auto* imc = app.add_subcommand("imc", "Run the feasible-pair algorithm and extract an IMC");
  imc->add_option("--graph", graph)->required();
  imc->add_option("--d", imc_d)->required();
  imc->add_flag("--check-lemmas", lemmas);
  imc->add_option("--critical-edge", edge, "Seed through edge p1,i1,p2,i2");
  add_budget(imc);

  auto* certify = app.add_subcommand("certify", "Certificate that no full IT exists");
  certify->add_option("--graph", graph)->required();
  add_budget(certify);

  auto* table = app.add_subcommand("table", "Reproduction tables");
  table->add_option("--preset", preset)->check(CLI::IsMember({"f65"}));
  table->add_option("--delta", range, "Range lo..hi");
  table->add_option("--format", format)->check(CLI::IsMember({"md", "csv"}));
  add_budget(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (budget == 0) budget = default_budget();
    if (*construct) return cmd_construct(recipe, out);
    if (*verify) return cmd_verify(graph, claim, budget);
    if (*solve) {
      return cmd_solve(graph, *defect_opt ? std::optional<std::size_t>(defect) : std::nullopt,
                       budget);
    }
    if (*bounds) return cmd_bounds(r, d, delta, grid, format);
    if (*imc) return cmd_imc(graph, imc_d, lemmas, edge, budget);
    if (*certify) return cmd_certify(graph, budget);
    if (*table) return cmd_table(preset, range, format, budget);
  } catch (const pit::Error& e) {
    std::cerr << "error [" << pit::to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
