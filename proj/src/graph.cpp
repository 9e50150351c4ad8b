#include "pit/graph.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::vertex_out_of_range: return "vertex out of range";
    case ErrorCode::malformed_header: return "malformed header";
    case ErrorCode::malformed_line: return "malformed line";
    case ErrorCode::intra_class_edge: return "intra-class edge";
    case ErrorCode::duplicate_edge: return "duplicate edge";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::budget_exhausted: return "budget exhausted";
    case ErrorCode::construction_rejected: return "construction rejected";
    case ErrorCode::claim_refuted: return "claim refuted";
    case ErrorCode::precondition_failed: return "precondition failed";
    case ErrorCode::hypothesis_not_met: return "hypothesis not met";
    case ErrorCode::recipe_syntax: return "recipe syntax error";
    case ErrorCode::internal_assertion: return "internal assertion";
    case ErrorCode::io_failure: return "i/o failure";
  }
  return "unknown error";
}

std::string to_string(VertexRef v) {
  return "(" + std::to_string(v.part) + "," + std::to_string(v.index) + ")";
}

MultipartiteGraph::MultipartiteGraph(std::vector<std::size_t> class_sizes,
                                     std::span<const Edge> edges)
    : sizes_(std::move(class_sizes)) {
  offsets_.resize(sizes_.size());
  std::size_t total = 0;
  for (std::size_t p = 0; p < sizes_.size(); ++p) {
    offsets_[p] = total;
    total += sizes_[p];
  }
  adj_list_.assign(total, {});
  adj_bits_.assign(total, Bits(total));

  for (const Edge& e : edges) {
    if (!valid(e.a) || !valid(e.b)) {
      throw GraphError(ErrorCode::vertex_out_of_range,
                       "vertex out of range in edge " + to_string(e.a) + "-" + to_string(e.b));
    }
    if (e.a.part == e.b.part) {
      throw GraphError(ErrorCode::intra_class_edge,
                       "intra-class edge " + to_string(e.a) + "-" + to_string(e.b));
    }
    const std::size_t u = id(e.a);
    const std::size_t v = id(e.b);
    if (adj_bits_[u][v]) {
      throw GraphError(ErrorCode::duplicate_edge,
                       "duplicate edge " + to_string(e.a) + "-" + to_string(e.b));
    }
    adj_bits_[u][v] = true;
    adj_bits_[v][u] = true;
    adj_list_[u].push_back(v);
    adj_list_[v].push_back(u);
    ++num_edges_;
  }
  for (auto& nbrs : adj_list_) {
    std::sort(nbrs.begin(), nbrs.end());
    max_degree_ = std::max(max_degree_, nbrs.size());
  }
}

std::size_t MultipartiteGraph::min_class_size() const noexcept {
  if (sizes_.empty()) return 0;
  return *std::min_element(sizes_.begin(), sizes_.end());
}

std::size_t MultipartiteGraph::id(VertexRef v) const {
  if (!valid(v)) {
    throw GraphError(ErrorCode::vertex_out_of_range, "vertex out of range: " + to_string(v));
  }
  return offsets_[v.part] + v.index;
}

VertexRef MultipartiteGraph::ref(std::size_t id) const {
  if (id >= adj_list_.size()) {
    throw GraphError(ErrorCode::vertex_out_of_range,
                     "vertex id out of range: " + std::to_string(id));
  }
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  // Last class whose offset is <= id; empty classes share the next offset and
  // are therefore never selected.
  const std::size_t part = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {part, id - offsets_[part]};
}

Bits MultipartiteGraph::class_bits(std::size_t part) const {
  Bits bits(num_vertices());
  for (std::size_t v = class_begin(part); v < class_end(part); ++v) bits.set(v);
  return bits;
}

std::vector<Edge> MultipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < adj_list_.size(); ++u) {
    const VertexRef ru = ref(u);
    for (std::size_t v : adj_list_[u]) {
      if (v > u) out.emplace_back(ru, ref(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t degree(const MultipartiteGraph& g, VertexRef v) {
  return g.neighbours(g.id(v)).size();
}

ClassSet class_support(const VertexSet& s) {
  std::vector<std::size_t> parts;
  parts.reserve(s.size());
  for (const VertexRef& v : s) parts.push_back(v.part);
  return ClassSet(std::move(parts));
}

MultipartiteGraph induced_on_classes(const MultipartiteGraph& g, const ClassSet& y) {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> renumber(g.num_classes(), SIZE_MAX);
  for (std::size_t p : y) {
    if (p >= g.num_classes()) {
      throw GraphError(ErrorCode::vertex_out_of_range,
                       "class index out of range: " + std::to_string(p));
    }
    renumber[p] = sizes.size();
    sizes.push_back(g.class_size(p));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (renumber[e.a.part] == SIZE_MAX || renumber[e.b.part] == SIZE_MAX) continue;
    edges.emplace_back(VertexRef{renumber[e.a.part], e.a.index},
                       VertexRef{renumber[e.b.part], e.b.index});
  }
  return MultipartiteGraph(std::move(sizes), edges);
}

bool is_independent(const MultipartiteGraph& g, const VertexSet& s) {
  const Bits bits = to_bits(g, s);
  for (const VertexRef& v : s) {
    if (g.neighbour_bits(g.id(v)).intersects(bits)) return false;
  }
  return true;
}

bool dominates(const MultipartiteGraph& g, const VertexSet& s, const VertexSet& target) {
  const Bits bits = to_bits(g, s);
  for (const VertexRef& x : target) {
    const std::size_t id = g.id(x);
    if (bits[id]) continue;
    if (!g.neighbour_bits(id).intersects(bits)) return false;
  }
  return true;
}

VertexSet vertices_of_classes(const MultipartiteGraph& g, const ClassSet& classes) {
  std::vector<VertexRef> out;
  for (std::size_t p : classes) {
    for (std::size_t i = 0; i < g.class_size(p); ++i) out.push_back({p, i});
  }
  return VertexSet(std::move(out));
}

VertexSet neighbourhood(const MultipartiteGraph& g, const VertexSet& s) {
  Bits acc = g.empty_bits();
  for (const VertexRef& v : s) acc |= g.neighbour_bits(g.id(v));
  return from_bits(g, acc);
}

MultipartiteGraph without_edge(const MultipartiteGraph& g, const Edge& e) {
  std::vector<Edge> edges = g.edges();
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) {
    throw GraphError(ErrorCode::invalid_argument,
                     "edge not present: " + to_string(e.a) + "-" + to_string(e.b));
  }
  edges.erase(it);
  return MultipartiteGraph(g.class_sizes(), edges);
}

Bits to_bits(const MultipartiteGraph& g, const VertexSet& s) {
  Bits bits(g.num_vertices());
  for (const VertexRef& v : s) bits.set(g.id(v));
  return bits;
}

VertexSet from_bits(const MultipartiteGraph& g, const Bits& bits) {
  std::vector<VertexRef> out;
  for (auto v = bits.find_first(); v != Bits::npos; v = bits.find_next(v)) {
    out.push_back(g.ref(v));
  }
  return VertexSet(std::move(out));
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(' ', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_size(std::string_view token, std::size_t& out) {
  if (token.empty()) return false;
  if (token.size() > 1 && token[0] == '0') return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

MultipartiteGraph parse_mpg(std::string_view text) {
  if (text.empty() || text.back() != '\n') {
    throw GraphError(ErrorCode::malformed_header, "missing trailing newline");
  }
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.size() < 3 || lines[0] != "mpg 1") {
    throw GraphError(ErrorCode::malformed_header, "expected 'mpg 1' header");
  }
  auto parts_tok = split_spaces(lines[1]);
  std::size_t r = 0;
  if (parts_tok.size() != 2 || parts_tok[0] != "parts" || !parse_size(parts_tok[1], r)) {
    throw GraphError(ErrorCode::malformed_header, "expected 'parts <r>'");
  }
  auto size_tok = split_spaces(lines[2]);
  if (size_tok[0] != "sizes" || size_tok.size() != r + 1) {
    throw GraphError(ErrorCode::malformed_header,
                     "expected 'sizes' followed by " + std::to_string(r) + " counts");
  }
  std::vector<std::size_t> sizes(r);
  for (std::size_t p = 0; p < r; ++p) {
    if (!parse_size(size_tok[p + 1], sizes[p])) {
      throw GraphError(ErrorCode::malformed_header, "bad class size");
    }
  }

  std::vector<Edge> edges;
  for (std::size_t ln = 3; ln < lines.size(); ++ln) {
    auto tok = split_spaces(lines[ln]);
    std::size_t v[4];
    bool ok = tok.size() == 5 && tok[0] == "edge";
    for (std::size_t k = 0; ok && k < 4; ++k) ok = parse_size(tok[k + 1], v[k]);
    if (!ok) {
      throw GraphError(ErrorCode::malformed_line,
                       "malformed edge line " + std::to_string(ln + 1));
    }
    edges.emplace_back(VertexRef{v[0], v[1]}, VertexRef{v[2], v[3]});
  }
  return MultipartiteGraph(std::move(sizes), edges);
}

std::string serialize_mpg(const MultipartiteGraph& g) {
  std::ostringstream out;
  out << "mpg 1\nparts " << g.num_classes() << "\nsizes";
  for (std::size_t s : g.class_sizes()) out << ' ' << s;
  out << '\n';
  for (const Edge& e : g.edges()) {
    out << "edge " << e.a.part << ' ' << e.a.index << ' ' << e.b.part << ' ' << e.b.index
        << '\n';
  }
  return out.str();
}

MultipartiteGraph read_mpg_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mpg(buf.str());
}

void write_mpg_file(const std::string& path, const MultipartiteGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path);
  out << serialize_mpg(g);
}

}  // namespace pit
