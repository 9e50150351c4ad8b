#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pit/error.hpp"

namespace pit {

// A vertex addressed by (class, position within class). The natural ordering
// is lexicographic and coincides with the global vertex numbering.
struct VertexRef {
  std::size_t part = 0;
  std::size_t index = 0;

  friend constexpr auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

std::string to_string(VertexRef v);

// Sorted, duplicate-free vector. Iteration is always in ascending order.
template <typename T>
class SortedSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  SortedSet() = default;
  SortedSet(std::initializer_list<T> init) : items_(init) { normalize(); }
  explicit SortedSet(std::vector<T> items) : items_(std::move(items)) { normalize(); }

  bool contains(const T& x) const {
    return std::binary_search(items_.begin(), items_.end(), x);
  }
  bool insert(const T& x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it != items_.end() && *it == x) return false;
    items_.insert(it, x);
    return true;
  }
  bool erase(const T& x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it == items_.end() || *it != x) return false;
    items_.erase(it);
    return true;
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  const T& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<T>& items() const noexcept { return items_; }

  bool is_subset_of(const SortedSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(),
                         items_.end());
  }

  friend SortedSet set_union(const SortedSet& a, const SortedSet& b) {
    SortedSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.items_));
    return out;
  }
  friend SortedSet set_intersection(const SortedSet& a, const SortedSet& b) {
    SortedSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out.items_));
    return out;
  }
  friend SortedSet set_difference(const SortedSet& a, const SortedSet& b) {
    SortedSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.items_));
    return out;
  }

  friend bool operator==(const SortedSet&, const SortedSet&) = default;

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<T> items_;
};

using VertexSet = SortedSet<VertexRef>;
using ClassSet = SortedSet<std::size_t>;

// Undirected edge stored with `a.part < b.part`.
struct Edge {
  VertexRef a;
  VertexRef b;

  Edge() = default;
  Edge(VertexRef x, VertexRef y) : a(x), b(y) {
    if (b.part < a.part) std::swap(a, b);
  }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

using Bits = boost::dynamic_bitset<std::uint64_t>;

class GraphError : public Error {
 public:
  using Error::Error;
};

// r-partite graph with no edges inside a class. Immutable once built.
class MultipartiteGraph {
 public:
  MultipartiteGraph() = default;

  // Throws GraphError for out-of-range endpoints, intra-class edges and
  // duplicate edges.
  MultipartiteGraph(std::vector<std::size_t> class_sizes, std::span<const Edge> edges);

  std::size_t num_classes() const noexcept { return sizes_.size(); }
  std::size_t class_size(std::size_t part) const { return sizes_.at(part); }
  const std::vector<std::size_t>& class_sizes() const noexcept { return sizes_; }
  std::size_t num_vertices() const noexcept { return adj_list_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::size_t min_class_size() const noexcept;
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool valid(VertexRef v) const noexcept {
    return v.part < sizes_.size() && v.index < sizes_[v.part];
  }
  // Global id of a vertex; ids follow lexicographic (part, index) order.
  std::size_t id(VertexRef v) const;
  VertexRef ref(std::size_t id) const;
  std::size_t class_of(std::size_t id) const { return ref(id).part; }
  std::size_t class_begin(std::size_t part) const { return offsets_.at(part); }
  std::size_t class_end(std::size_t part) const { return offsets_.at(part) + sizes_.at(part); }

  bool adjacent(VertexRef u, VertexRef v) const { return adj_bits_[id(u)][id(v)]; }
  bool adjacent_ids(std::size_t u, std::size_t v) const { return adj_bits_[u][v]; }
  std::span<const std::size_t> neighbours(std::size_t id) const { return adj_list_.at(id); }
  const Bits& neighbour_bits(std::size_t id) const { return adj_bits_.at(id); }
  // Bitmask of every vertex in the given class.
  Bits class_bits(std::size_t part) const;
  Bits empty_bits() const { return Bits(num_vertices()); }

  // Canonically ordered edge list.
  std::vector<Edge> edges() const;

  friend bool operator==(const MultipartiteGraph& x, const MultipartiteGraph& y) {
    return x.sizes_ == y.sizes_ && x.adj_list_ == y.adj_list_;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::size_t>> adj_list_;
  std::vector<Bits> adj_bits_;
  std::size_t num_edges_ = 0;
  std::size_t max_degree_ = 0;
};

// Throws GraphError(vertex_out_of_range) for an invalid vertex.
std::size_t degree(const MultipartiteGraph& g, VertexRef v);

ClassSet class_support(const VertexSet& s);

// G_Y: the graph induced on the listed classes, renumbered 0..|Y|-1 in
// ascending order of the original class index.
MultipartiteGraph induced_on_classes(const MultipartiteGraph& g, const ClassSet& y);

bool is_independent(const MultipartiteGraph& g, const VertexSet& s);

// True iff every vertex of target \ s has a neighbour in s.
bool dominates(const MultipartiteGraph& g, const VertexSet& s, const VertexSet& target);

// All vertices of the listed classes.
VertexSet vertices_of_classes(const MultipartiteGraph& g, const ClassSet& classes);
// Vertices adjacent to at least one member of s.
VertexSet neighbourhood(const MultipartiteGraph& g, const VertexSet& s);

MultipartiteGraph without_edge(const MultipartiteGraph& g, const Edge& e);

Bits to_bits(const MultipartiteGraph& g, const VertexSet& s);
VertexSet from_bits(const MultipartiteGraph& g, const Bits& bits);

// MPG text format.
MultipartiteGraph parse_mpg(std::string_view text);
std::string serialize_mpg(const MultipartiteGraph& g);
MultipartiteGraph read_mpg_file(const std::string& path);
void write_mpg_file(const std::string& path, const MultipartiteGraph& g);

}  // namespace pit
