#include "pit/constructions.hpp"

#include <algorithm>
#include <sstream>

#include "pit/bounds.hpp"
#include "pit/solver.hpp"

namespace pit {

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::derived: return "derived";
    case ClaimStatus::trusted: return "trusted";
    case ClaimStatus::certified: return "certified";
  }
  return "unknown";
}

std::string to_string(const Claim& c) {
  std::ostringstream out;
  out << "r=" << c.r << " D=" << c.defect << " n=" << c.n << " delta=" << c.delta << " ("
      << to_string(c.status) << ")";
  return out.str();
}

Claim parse_claim(const std::string& text) {
  Claim c;
  char sep[3] = {};
  std::istringstream in(text);
  in >> c.r >> sep[0] >> c.defect >> sep[1] >> c.n >> sep[2] >> c.delta;
  if (!in || sep[0] != ',' || sep[1] != ',' || sep[2] != ',' || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::invalid_argument, "claim must be 'r,D,n,delta': " + text);
  }
  if (c.defect < 1) throw Error(ErrorCode::invalid_argument, "claim needs D >= 1");
  c.status = ClaimStatus::trusted;
  return c;
}

RecipePtr Recipe::kdd(std::size_t delta) {
  return std::make_shared<Recipe>(recipe::Kdd{delta});
}
RecipePtr Recipe::blowup(std::size_t m, std::size_t s) {
  return std::make_shared<Recipe>(recipe::Blowup{m, s});
}
RecipePtr Recipe::blocks(std::size_t r, std::size_t delta) {
  return std::make_shared<Recipe>(recipe::Blocks{r, delta});
}
RecipePtr Recipe::file(std::string path, Claim claim) {
  return std::make_shared<Recipe>(recipe::File{std::move(path), claim});
}
RecipePtr Recipe::add_kr(RecipePtr child) {
  return std::make_shared<Recipe>(recipe::AddKr{std::move(child)});
}
RecipePtr Recipe::copies(RecipePtr child, std::size_t m) {
  return std::make_shared<Recipe>(recipe::Copies{std::move(child), m});
}
RecipePtr Recipe::rows_spine(RecipePtr child, std::size_t m) {
  return std::make_shared<Recipe>(recipe::RowsSpine{std::move(child), m});
}
RecipePtr Recipe::three_layer(RecipePtr child, std::size_t m, std::size_t j, std::size_t l) {
  return std::make_shared<Recipe>(recipe::ThreeLayer{std::move(child), m, j, l});
}
RecipePtr Recipe::main_construction(std::size_t q, std::size_t i, std::size_t d,
                                    std::size_t k, std::size_t delta, RecipePtr base) {
  return std::make_shared<Recipe>(recipe::MainConstruction{q, i, d, k, delta, std::move(base)});
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void reject(const std::string& what) {
  throw Error(ErrorCode::construction_rejected, "construction rejected: " + what);
}

void require(bool ok, const std::string& what) {
  if (!ok) reject(what);
}

ClaimStatus merge(ClaimStatus a) { return a == ClaimStatus::trusted ? a : ClaimStatus::derived; }

// The blow-up family expressed with the generic operators, plus the number of
// isolated padding classes appended at the end.
struct MainPlan {
  RecipePtr core;
  std::size_t pad = 0;
};

MainPlan plan_main(const recipe::MainConstruction& mc) {
  require(bounds::main_construction_valid(static_cast<std::int64_t>(mc.q),
                                          static_cast<std::int64_t>(mc.i),
                                          static_cast<std::int64_t>(mc.d),
                                          static_cast<std::int64_t>(mc.k)),
          "main construction needs even q >= 2, 1 <= i <= d+2, 0 <= k < d+i and "
          "i = 1 or (i-1) divides (d+i)");
  RecipePtr base = mc.base ? mc.base : Recipe::kdd(mc.delta);
  MainPlan plan;
  if (mc.i == 1) {
    plan.core = Recipe::copies(base, mc.d + 1);
  } else {
    const std::size_t l = (mc.d + mc.i) / (mc.i - 1);
    plan.core = Recipe::copies(Recipe::rows_spine(base, l), mc.i - 1);
  }
  plan.pad = mc.k;
  return plan;
}

Claim claim_impl(const Recipe& node);

Claim claim_impl(const RecipePtr& p) {
  require(p != nullptr, "missing child recipe");
  return claim_impl(*p);
}

Claim claim_impl(const Recipe& node) {
  return std::visit(
      overloaded{
          [](const recipe::Kdd& n) {
            require(n.delta >= 1, "K_{delta,delta} needs delta >= 1");
            return Claim{2, 1, n.delta, n.delta, ClaimStatus::derived};
          },
          [](const recipe::Blowup& n) {
            require(n.m >= 2 && n.s >= 1, "complete blow-up needs m >= 2 and s >= 1");
            return Claim{n.m, n.m - 1, n.s, (n.m - 1) * n.s, ClaimStatus::derived};
          },
          [](const recipe::Blocks& n) {
            require(n.r >= 2 && n.delta >= 1, "bipartite blocks need r >= 2 and delta >= 1");
            return Claim{n.r, n.r / 2, n.delta, n.delta, ClaimStatus::derived};
          },
          [](const recipe::File& n) {
            require(n.claim.defect >= 1, "file claim needs D >= 1");
            Claim c = n.claim;
            c.status = ClaimStatus::trusted;
            return c;
          },
          [](const recipe::AddKr& n) {
            Claim c = claim_impl(n.child);
            require(c.r >= 2, "adding K_r needs r >= 2");
            require(c.defect >= 2, "adding K_r lowers D by one and needs D - 1 >= 1");
            c.n += c.delta / (c.r - 1);
            c.defect -= 1;
            c.status = merge(c.status);
            return c;
          },
          [](const recipe::Copies& n) {
            require(n.m >= 1, "disjoint copies need m >= 1");
            Claim c = claim_impl(n.child);
            c.r *= n.m;
            c.defect *= n.m;
            c.status = merge(c.status);
            return c;
          },
          [](const recipe::RowsSpine& n) {
            require(n.m >= 2, "rows plus spine needs m >= 2");
            Claim c = claim_impl(n.child);
            c.n += c.delta / ((n.m - 1) * c.r);
            c.r *= n.m;
            c.defect *= n.m - 1;
            c.status = merge(c.status);
            return c;
          },
          [](const recipe::ThreeLayer& n) {
            require(n.j >= 1 && n.l >= 1 && n.m == n.j * n.l, "three-layer needs m = j*l");
            require(n.l >= 2, "three-layer needs l >= 2");
            require(n.m >= n.j + 2, "three-layer needs (m - j - 1) * D >= 1");
            Claim c = claim_impl(n.child);
            c.n += c.delta / ((n.l - 1) * c.r) + c.delta / ((n.m - 1) * c.r);
            c.r *= n.m;
            c.defect *= n.m - n.j - 1;
            c.status = merge(c.status);
            return c;
          },
          [](const recipe::MainConstruction& n) {
            const MainPlan plan = plan_main(n);
            Claim c;
            if (n.base) {
              const Claim b = claim_impl(n.base);
              require(b.r == n.q && b.defect == 1 && b.delta == n.delta,
                      "main construction base must be q-partite with D = 1 and the same delta");
              c = claim_impl(plan.core);
            } else if (n.q == 2) {
              c = claim_impl(plan.core);
            } else {
              // No explicit base: the q-partite full-IT extremal value stands in
              // for the base size. Such a recipe has a claim but cannot be built.
              c.r = n.q * (n.d + n.i);
              c.defect = n.d + 1;
              c.delta = n.delta;
              c.n = static_cast<std::size_t>(bounds::full_it_threshold(
                  static_cast<std::int64_t>(n.q), static_cast<std::int64_t>(n.delta)));
              if (n.i > 1) {
                const std::size_t l = (n.d + n.i) / (n.i - 1);
                c.n += n.delta / ((l - 1) * n.q);
              }
            }
            c.r += n.k;
            return c;
          },
      },
      node.node());
}

struct Layout {
  std::vector<std::size_t> sizes;
  std::vector<Edge> edges;
};

// Stacks `m` copies of `child` as rows; row i owns classes [i*r0, (i+1)*r0).
Layout stack_rows(const Layout& child, std::size_t m) {
  const std::size_t r0 = child.sizes.size();
  Layout out;
  for (std::size_t row = 0; row < m; ++row) {
    out.sizes.insert(out.sizes.end(), child.sizes.begin(), child.sizes.end());
    for (const Edge& e : child.edges) {
      out.edges.emplace_back(VertexRef{row * r0 + e.a.part, e.a.index},
                             VertexRef{row * r0 + e.b.part, e.b.index});
    }
  }
  return out;
}

// Appends `per_class` new vertices to every class. Rows are blocks of
// `row_width` consecutive classes; new vertices of two different rows in the
// same group of `group_len` consecutive rows are joined completely, new
// vertices within one row stay independent.
void add_row_layer(Layout& layout, std::size_t row_width, std::size_t group_len,
                   std::size_t per_class) {
  if (per_class == 0) return;
  const std::size_t classes = layout.sizes.size();
  std::vector<std::size_t> start(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    start[c] = layout.sizes[c];
    layout.sizes[c] += per_class;
  }
  for (std::size_t c1 = 0; c1 < classes; ++c1) {
    const std::size_t row1 = c1 / row_width;
    for (std::size_t c2 = c1 + 1; c2 < classes; ++c2) {
      const std::size_t row2 = c2 / row_width;
      if (row1 == row2 || row1 / group_len != row2 / group_len) continue;
      for (std::size_t a = 0; a < per_class; ++a) {
        for (std::size_t b = 0; b < per_class; ++b) {
          layout.edges.emplace_back(VertexRef{c1, start[c1] + a}, VertexRef{c2, start[c2] + b});
        }
      }
    }
  }
}

Layout to_layout(const MultipartiteGraph& g) { return Layout{g.class_sizes(), g.edges()}; }

Layout build_impl(const RecipePtr& p, const Claim& claim);

Layout build_impl(const RecipePtr& p) { return build_impl(p, claim_impl(p)); }

Layout build_impl(const RecipePtr& p, const Claim& claim) {
  return std::visit(
      overloaded{
          [&](const recipe::Kdd& n) {
            Layout out{{0, 0}, {}};
            add_row_layer(out, 1, 2, n.delta);
            return out;
          },
          [&](const recipe::Blowup& n) {
            Layout out{std::vector<std::size_t>(n.m, 0), {}};
            add_row_layer(out, 1, n.m, n.s);
            return out;
          },
          [&](const recipe::Blocks& n) {
            Layout out{std::vector<std::size_t>(n.r, 0), {}};
            // Pairs (0,1), (2,3), ... become K_{delta,delta}; an odd last
            // class stays isolated.
            add_row_layer(out, 1, 2, n.delta);
            if (n.r % 2 == 1) {
              std::erase_if(out.edges, [&](const Edge& e) {
                return e.a.part == n.r - 1 || e.b.part == n.r - 1;
              });
            }
            return out;
          },
          [&](const recipe::File& n) {
            const MultipartiteGraph g = read_mpg_file(n.path);
            return to_layout(g);
          },
          [&](const recipe::AddKr& n) {
            Layout out = build_impl(n.child);
            const Claim c = claim_impl(n.child);
            add_row_layer(out, 1, c.r, c.delta / (c.r - 1));
            return out;
          },
          [&](const recipe::Copies& n) { return stack_rows(build_impl(n.child), n.m); },
          [&](const recipe::RowsSpine& n) {
            const Claim c = claim_impl(n.child);
            Layout out = stack_rows(build_impl(n.child), n.m);
            add_row_layer(out, c.r, n.m, c.delta / ((n.m - 1) * c.r));
            return out;
          },
          [&](const recipe::ThreeLayer& n) {
            const Claim c = claim_impl(n.child);
            Layout out = stack_rows(build_impl(n.child), n.m);
            add_row_layer(out, c.r, n.l, c.delta / ((n.l - 1) * c.r));  // medium
            add_row_layer(out, c.r, n.m, c.delta / ((n.m - 1) * c.r));  // small
            return out;
          },
          [&](const recipe::MainConstruction& n) {
            require(n.base != nullptr || n.q == 2,
                    "main construction with q >= 4 needs an explicit q-partite base");
            const MainPlan plan = plan_main(n);
            Layout out = build_impl(plan.core);
            for (std::size_t extra = 0; extra < plan.pad; ++extra) out.sizes.push_back(claim.n);
            return out;
          },
      },
      p->node());
}

}  // namespace

Claim claim_of(const RecipePtr& recipe) { return claim_impl(recipe); }

Rat lower_bound_from_recipe(const RecipePtr& recipe) {
  return Rat(static_cast<std::int64_t>(claim_of(recipe).n));
}

BuiltConstruction build(const RecipePtr& recipe) {
  const Claim claim = claim_of(recipe);
  Layout layout = build_impl(recipe, claim);
  std::sort(layout.edges.begin(), layout.edges.end());
  return BuiltConstruction{MultipartiteGraph(std::move(layout.sizes), layout.edges), claim};
}

CertifiedClaim certify_graph(const MultipartiteGraph& g, const Claim& claim,
                             std::uint64_t budget) {
  if (g.num_classes() != claim.r) {
    throw ClaimRefuted("expected " + std::to_string(claim.r) + " classes, found " +
                           std::to_string(g.num_classes()),
                       std::nullopt);
  }
  if (claim.r > 0 && g.min_class_size() < claim.n) {
    throw ClaimRefuted("a class has " + std::to_string(g.min_class_size()) +
                           " vertices, claimed at least " + std::to_string(claim.n),
                       std::nullopt);
  }
  if (g.max_degree() > claim.delta) {
    throw ClaimRefuted("maximum degree " + std::to_string(g.max_degree()) + " exceeds " +
                           std::to_string(claim.delta),
                       std::nullopt);
  }
  if (claim.defect > claim.r) {
    throw ClaimRefuted("defect exceeds class count", std::nullopt);
  }
  SolveResult best = max_partial_it(g, budget);
  if (!best.exhaustive) throw InternalAssertion("solver returned a non-exhaustive result");
  if (best.size > claim.r - claim.defect) {
    throw ClaimRefuted("found an independent transversal of size " + std::to_string(best.size) +
                           " > r - D = " + std::to_string(claim.r - claim.defect),
                       best.witness);
  }
  CertifiedClaim out;
  out.claim = claim;
  out.claim.status = ClaimStatus::certified;
  out.measured_max_it = best.size;
  out.max_it_witness = std::move(best.witness);
  out.measured_max_degree = g.max_degree();
  out.measured_min_class = g.min_class_size();
  return out;
}

CertifiedClaim certify(const RecipePtr& recipe, std::uint64_t budget) {
  BuiltConstruction built = build(recipe);
  return certify_graph(built.graph, built.claim, budget);
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line_no) {
  const bool digits = !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  if (!digits || tok.size() > 18) {
    throw Error(ErrorCode::recipe_syntax,
                "recipe line " + std::to_string(line_no) + ": expected a count, got '" + tok + "'");
  }
  return static_cast<std::size_t>(std::stoull(tok));
}

}  // namespace

RecipePtr parse_recipe(std::string_view text) {
  RecipePtr cur;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(";\n", pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<std::string> tok = split_tokens(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorCode::recipe_syntax,
                  "recipe line " + std::to_string(line_no) + ": " + what);
    };
    auto arity = [&](std::size_t n) {
      if (tok.size() != n + 1) {
        fail("'" + tok[0] + "' takes " + std::to_string(n) + " argument(s)");
      }
    };
    auto num = [&](std::size_t i) { return parse_count(tok[i], line_no); };
    const std::string& op = tok[0];
    if (op == "recipe") {
      arity(1);
      if (seen_header || cur || tok[1] != "1") fail("bad or misplaced 'recipe 1' header");
      seen_header = true;
      continue;
    }
    seen_header = true;
    const bool is_base = op == "kdd" || op == "blowup" || op == "blocks" || op == "file";
    if (is_base && cur) fail("'" + op + "' must be the first operator");
    const bool is_wrapper = op == "add-kr" || op == "copies" || op == "rows-spine" ||
                            op == "three-layer";
    if (is_wrapper && !cur) fail("'" + op + "' needs a preceding base");
    if (op == "kdd") {
      arity(1);
      cur = Recipe::kdd(num(1));
    } else if (op == "blowup") {
      arity(2);
      cur = Recipe::blowup(num(1), num(2));
    } else if (op == "blocks") {
      arity(2);
      cur = Recipe::blocks(num(1), num(2));
    } else if (op == "file") {
      arity(5);
      Claim c{num(2), num(3), num(4), num(5), ClaimStatus::trusted};
      cur = Recipe::file(tok[1], c);
    } else if (op == "add-kr") {
      arity(0);
      cur = Recipe::add_kr(cur);
    } else if (op == "copies") {
      arity(1);
      cur = Recipe::copies(cur, num(1));
    } else if (op == "rows-spine") {
      arity(1);
      cur = Recipe::rows_spine(cur, num(1));
    } else if (op == "three-layer") {
      arity(3);
      cur = Recipe::three_layer(cur, num(1), num(2), num(3));
    } else if (op == "main") {
      arity(5);
      cur = Recipe::main_construction(num(1), num(2), num(3), num(4), num(5), cur);
    } else {
      fail("unknown operator '" + op + "'");
    }
  }
  if (!cur) throw Error(ErrorCode::recipe_syntax, "recipe has no operators");
  return cur;
}

std::string serialize_recipe(const RecipePtr& recipe) {
  std::vector<std::string> lines;
  RecipePtr cur = recipe;
  while (cur) {
    RecipePtr next;
    std::visit(overloaded{
                   [&](const recipe::Kdd& n) { lines.push_back("kdd " + std::to_string(n.delta)); },
                   [&](const recipe::Blowup& n) {
                     lines.push_back("blowup " + std::to_string(n.m) + " " + std::to_string(n.s));
                   },
                   [&](const recipe::Blocks& n) {
                     lines.push_back("blocks " + std::to_string(n.r) + " " +
                                     std::to_string(n.delta));
                   },
                   [&](const recipe::File& n) {
                     lines.push_back("file " + n.path + " " + std::to_string(n.claim.r) + " " +
                                     std::to_string(n.claim.defect) + " " +
                                     std::to_string(n.claim.n) + " " +
                                     std::to_string(n.claim.delta));
                   },
                   [&](const recipe::AddKr& n) {
                     lines.push_back("add-kr");
                     next = n.child;
                   },
                   [&](const recipe::Copies& n) {
                     lines.push_back("copies " + std::to_string(n.m));
                     next = n.child;
                   },
                   [&](const recipe::RowsSpine& n) {
                     lines.push_back("rows-spine " + std::to_string(n.m));
                     next = n.child;
                   },
                   [&](const recipe::ThreeLayer& n) {
                     lines.push_back("three-layer " + std::to_string(n.m) + " " +
                                     std::to_string(n.j) + " " + std::to_string(n.l));
                     next = n.child;
                   },
                   [&](const recipe::MainConstruction& n) {
                     lines.push_back("main " + std::to_string(n.q) + " " + std::to_string(n.i) +
                                     " " + std::to_string(n.d) + " " + std::to_string(n.k) + " " +
                                     std::to_string(n.delta));
                     next = n.base;
                   },
               },
               cur->node());
    cur = next;
  }
  std::string out = "recipe 1\n";
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) out += *it + "\n";
  return out;
}

}  // namespace pit
