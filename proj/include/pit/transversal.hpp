#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pit/graph.hpp"

namespace pit {

// At most one picked vertex per class, kept sorted by class.
class Transversal {
 public:
  Transversal() = default;
  // Throws Error(invalid_argument) if two picks share a class.
  explicit Transversal(std::vector<VertexRef> picks);

  std::size_t size() const noexcept { return picks_.size(); }
  bool empty() const noexcept { return picks_.empty(); }
  const std::vector<VertexRef>& picks() const noexcept { return picks_; }
  std::optional<VertexRef> pick_in(std::size_t part) const;
  ClassSet support() const;
  VertexSet vertices() const { return VertexSet(picks_); }

  friend bool operator==(const Transversal&, const Transversal&) = default;

 private:
  std::vector<VertexRef> picks_;
};

// Independent, one pick per class, every pick a valid vertex of g.
bool is_partial_it(const MultipartiteGraph& g, const Transversal& t);

std::string to_string(const Transversal& t);

}  // namespace pit
