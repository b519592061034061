#pragma once

// Splitters assign the d-1 children of a non-root vertex. Harmonicity at the
// vertex forces  sum(children) = d*u(v) - u(v_p);  every kind below produces
// a tuple with exactly that sum (the model re-checks it on every call).

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "harmtree/scalar.hpp"
#include "harmtree/tree.hpp"

namespace harmtree {

/// (value, parent value) of a vertex; the unit of class compression.
struct ValueClass {
  Rational value;
  Rational parent;

  friend bool operator==(const ValueClass&, const ValueClass&) = default;
  friend bool operator<(const ValueClass& a, const ValueClass& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.parent < b.parent;
  }
};

/// All children equal to (d*u - u_p)/(d-1).
struct EqualSplit {};

/// Neighbor multiset {2u, u/2, u/2} on the 3-regular tree; the children are
/// that multiset minus the parent's value.
struct DoubleHalf {};

/// d-2 children drawn as reduced rationals n/q with |n| <= magnitude and
/// 1 <= q <= denominator; the last child is forced by the sum constraint.
/// Draws are seeded by (seed, u, u_p), so the rule is value-homogeneous.
struct RandomSplit {
  std::uint64_t seed = 0;
  int magnitude = 9;
  int denominator = 4;
};

struct TableSplit {
  std::map<ValueClass, std::vector<Rational>> table;
};

/// Address-dependent rule; only usable with enumerated levels.
struct CustomSplit {
  using Rule = std::function<std::vector<Rational>(const TreeConfig&, const VertexAddress&,
                                                   const Rational& value, const Rational& parent)>;
  Rule rule;
  std::string name = "custom";
};

class Splitter {
 public:
  using Kind = std::variant<EqualSplit, DoubleHalf, RandomSplit, TableSplit, CustomSplit>;

  Splitter() = default;
  Splitter(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  static Splitter equal_split() { return Splitter(EqualSplit{}); }
  static Splitter double_half() { return Splitter(DoubleHalf{}); }
  static Splitter random(std::uint64_t seed, int magnitude = 9, int denominator = 4) {
    return Splitter(RandomSplit{seed, magnitude, denominator});
  }

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  /// True for every kind whose output depends only on (u, u_p).
  bool value_homogeneous() const noexcept { return !std::holds_alternative<CustomSplit>(kind_); }

  /// Writes the d-1 children of a vertex with value `cls.value` whose parent
  /// has value `cls.parent`. Not available for custom splitters.
  void split(const TreeConfig& cfg, const ValueClass& cls, std::span<Rational> out) const;

  /// Address-aware variant; works for every kind.
  void split_at(const TreeConfig& cfg, const VertexAddress& addr, const ValueClass& cls,
                std::span<Rational> out) const;

 private:
  Kind kind_ = EqualSplit{};
};

/// Throws splitter_violates_sum unless sum(children) == d*u - u_p.
void check_split_sum(const TreeConfig& cfg, const ValueClass& cls, std::span<const Rational> children);

/// The seeded rational draw used by RandomSplit (and by random root data).
Rational draw_rational(std::mt19937_64& rng, int magnitude, int denominator);

/// Seed mixing shared by the random splitter and random root data.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace harmtree
