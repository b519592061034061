#pragma once

// Addressing on the infinite d-regular tree rooted at x0.
//
// A vertex at level k is a path of k child indices. The root has d children
// (indices 0..d-1); every other vertex has d-1 children (indices 0..d-2).
// Enumeration order at each level is lexicographic in the path, so the
// children of the vertex with index i at level k >= 1 occupy indices
// [i*(d-1), (i+1)*(d-1)) at level k+1.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "harmtree/scalar.hpp"

namespace harmtree {

class TreeConfig {
 public:
  explicit TreeConfig(int degree);

  int degree() const noexcept { return d_; }
  /// Children per vertex at the given level (d at the root, d-1 elsewhere).
  int branching(int level) const noexcept { return level == 0 ? d_ : d_ - 1; }

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;

 private:
  int d_;
};

class VertexAddress {
 public:
  VertexAddress() = default;
  VertexAddress(std::initializer_list<std::size_t> path) : path_(path) {}
  explicit VertexAddress(std::vector<std::size_t> path) : path_(std::move(path)) {}

  int level() const noexcept { return static_cast<int>(path_.size()); }
  const std::vector<std::size_t>& path() const noexcept { return path_; }
  bool is_root() const noexcept { return path_.empty(); }

  friend auto operator<=>(const VertexAddress&, const VertexAddress&) = default;

 private:
  std::vector<std::size_t> path_;
};

std::string to_string(const VertexAddress& addr);

bool is_valid(const TreeConfig& cfg, const VertexAddress& addr);

Integer level_size(const TreeConfig& cfg, int k);

/// level_size as a machine integer; throws invalid_config when it does not fit.
std::size_t level_size_checked(const TreeConfig& cfg, int k);

VertexAddress parent(const VertexAddress& addr);

std::vector<VertexAddress> children(const TreeConfig& cfg, const VertexAddress& addr);

/// Distance d(x0, e) of the edge joining `child_addr` to its parent.
int edge_level(const TreeConfig& cfg, const VertexAddress& child_addr);

/// Position of `addr` in its level's enumeration order.
std::size_t index_of(const TreeConfig& cfg, const VertexAddress& addr);

VertexAddress address_of(const TreeConfig& cfg, int level, std::size_t index);

}  // namespace harmtree
