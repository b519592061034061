#include "harmtree/tree.hpp"

#include <limits>

namespace harmtree {

TreeConfig::TreeConfig(int degree) : d_(degree) {
  if (degree < 2) {
    throw Error(ErrorKind::invalid_config, "degree must be at least 2, got " + std::to_string(degree));
  }
}

std::string to_string(const VertexAddress& addr) {
  std::string out = "[";
  for (std::size_t i = 0; i < addr.path().size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(addr.path()[i]);
  }
  return out + "]";
}

bool is_valid(const TreeConfig& cfg, const VertexAddress& addr) {
  for (int i = 0; i < addr.level(); ++i) {
    if (addr.path()[static_cast<std::size_t>(i)] >= static_cast<std::size_t>(cfg.branching(i))) {
      return false;
    }
  }
  return true;
}

Integer level_size(const TreeConfig& cfg, int k) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  if (k == 0) return Integer(1);
  return Integer(cfg.degree()) * ipow(Integer(cfg.degree() - 1), static_cast<unsigned long>(k - 1));
}

std::size_t level_size_checked(const TreeConfig& cfg, int k) {
  const Integer n = level_size(cfg, k);
  if (n > Integer(std::numeric_limits<std::size_t>::max() / 4)) {
    throw Error(ErrorKind::invalid_config,
                "level " + std::to_string(k) + " has " + n.str() + " vertices; too many to enumerate");
  }
  return n.convert_to<std::size_t>();
}

VertexAddress parent(const VertexAddress& addr) {
  if (addr.is_root()) throw Error(ErrorKind::root_has_no_parent, "the root has no parent");
  std::vector<std::size_t> path = addr.path();
  path.pop_back();
  return VertexAddress(std::move(path));
}

std::vector<VertexAddress> children(const TreeConfig& cfg, const VertexAddress& addr) {
  const auto count = static_cast<std::size_t>(cfg.branching(addr.level()));
  std::vector<VertexAddress> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> path = addr.path();
    path.push_back(i);
    out.emplace_back(std::move(path));
  }
  return out;
}

int edge_level(const TreeConfig& cfg, const VertexAddress& child_addr) {
  if (child_addr.is_root()) throw Error(ErrorKind::no_edge_at_root, "level-0 address names no edge");
  if (!is_valid(cfg, child_addr)) {
    throw Error(ErrorKind::invalid_address, to_string(child_addr));
  }
  return child_addr.level() - 1;
}

std::size_t index_of(const TreeConfig& cfg, const VertexAddress& addr) {
  if (!is_valid(cfg, addr)) throw Error(ErrorKind::invalid_address, to_string(addr));
  std::size_t index = 0;
  for (int i = 0; i < addr.level(); ++i) {
    index = index * static_cast<std::size_t>(cfg.branching(i)) + addr.path()[static_cast<std::size_t>(i)];
  }
  return index;
}

VertexAddress address_of(const TreeConfig& cfg, int level, std::size_t index) {
  if (level < 0 || Integer(index) >= level_size(cfg, level)) {
    throw Error(ErrorKind::invalid_address,
                "index " + std::to_string(index) + " outside level " + std::to_string(level));
  }
  std::vector<std::size_t> path(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 0; --i) {
    const auto b = static_cast<std::size_t>(cfg.branching(i));
    path[static_cast<std::size_t>(i)] = index % b;
    index /= b;
  }
  return VertexAddress(std::move(path));
}

}  // namespace harmtree
