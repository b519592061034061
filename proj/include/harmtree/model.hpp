#pragma once

// Harmonic functions on the truncated d-regular tree, built level by level.
//
// A level is stored either enumerated (one value per vertex, address order)
// or compressed (multiplicity per (value, parent value) class). Enumerated is
// the ground truth; compressed is valid for value-homogeneous splitters and is
// what makes deep sweeps affordable. Level states are immutable and shared:
// an enumerated level keeps a pointer to its parent level instead of copying
// parent values.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "harmtree/scalar.hpp"
#include "harmtree/splitter.hpp"
#include "harmtree/tree.hpp"

namespace harmtree {

struct RootData {
  Rational u0;
  std::vector<Rational> children;  // values on V_1, in address order
};

/// Throws unless there are d children summing to d*u0.
void validate(const TreeConfig& cfg, const RootData& root);

enum class Representation { enumerated, compressed };

std::string to_string(Representation repr);

struct EnumeratedLevel {
  int k = 0;
  std::vector<Rational> values;
  std::shared_ptr<const EnumeratedLevel> parent;  // null at k = 0
  std::vector<Rational> root_children;            // k = 0 only

  std::size_t size() const noexcept { return values.size(); }
  /// Children per parent vertex at this level.
  std::size_t block() const noexcept { return parent ? values.size() / parent->values.size() : 0; }
  std::size_t parent_index(std::size_t i) const { return i / block(); }
  const Rational& parent_value(std::size_t i) const { return parent->values[parent_index(i)]; }
};

using ClassMap = std::map<ValueClass, Integer>;

struct CompressedLevel {
  int k = 0;
  /// At k = 0 the single class carries the root value in both slots.
  ClassMap classes;
  /// Child tuple of every level-(k-1) class, keyed by that class.
  std::map<ValueClass, std::vector<Rational>> sibling_tuples;
  std::vector<Rational> root_children;  // k = 0 only
};

class LevelState {
 public:
  using Enumerated = std::shared_ptr<const EnumeratedLevel>;
  using Compressed = std::shared_ptr<const CompressedLevel>;

  LevelState(Enumerated e) : state_(std::move(e)) {}  // NOLINT(google-explicit-constructor)
  LevelState(Compressed c) : state_(std::move(c)) {}  // NOLINT(google-explicit-constructor)

  int level() const;
  Representation representation() const noexcept {
    return std::holds_alternative<Enumerated>(state_) ? Representation::enumerated
                                                      : Representation::compressed;
  }
  const EnumeratedLevel& enumerated() const;
  const CompressedLevel& compressed() const;
  const Enumerated& enumerated_ptr() const;

  /// Number of vertices represented (sum of multiplicities when compressed).
  Integer vertex_count() const;
  /// Number of stored records: vertices when enumerated, classes when compressed.
  std::size_t record_count() const;

  /// Calls f(value, parent_value, multiplicity) for every record. The
  /// multiplicity is std::size_t{1} for enumerated levels and an Integer for
  /// compressed ones. At k = 0 the parent slot mirrors the root value.
  template <class F>
  void for_each_class(F&& f) const;

 private:
  std::variant<Enumerated, Compressed> state_;
};

/// Calls f(value, parent_value, std::span<const Rational> children,
/// multiplicity) for every vertex (or class) of `upper`, with its children in
/// `lower`. `lower` must be the level directly below `upper`, same representation.
template <class F>
void for_each_family(const LevelState& upper, const LevelState& lower, F&& f);

LevelState root_state(const TreeConfig& cfg, const RootData& root, Representation repr);

/// Level k+1 from level k. Checks the harmonic sum constraint for every
/// parent (splitter_violates_sum on failure).
LevelState extend(const TreeConfig& cfg, const LevelState& state, const Splitter& splitter);

LevelState compress(const LevelState& state);

/// True iff the enumerated level's (value, parent) multiplicities equal the
/// compressed level's classes exactly.
bool states_equivalent(const EnumeratedLevel& enumerated, const CompressedLevel& compressed);

class HarmonicModel {
 public:
  HarmonicModel(TreeConfig cfg, RootData root, Splitter splitter, std::vector<LevelState> ladder);

  const TreeConfig& cfg() const noexcept { return cfg_; }
  int degree() const noexcept { return cfg_.degree(); }
  const RootData& root() const noexcept { return root_; }
  const Splitter& splitter() const noexcept { return splitter_; }
  /// Deepest level K held by the ladder.
  int depth() const noexcept { return static_cast<int>(ladder_.size()) - 1; }
  Representation representation() const noexcept { return ladder_.front().representation(); }
  const LevelState& level(int k) const;
  const std::vector<LevelState>& ladder() const noexcept { return ladder_; }

  /// Copy with one level replaced; other levels are shared, not re-derived.
  HarmonicModel with_level(int k, LevelState state) const;

  /// Throws depth_insufficient unless depth() >= k.
  void require_depth(int k, const std::string& what) const;

 private:
  TreeConfig cfg_;
  RootData root_;
  Splitter splitter_;
  std::vector<LevelState> ladder_;
};

HarmonicModel build_model(const TreeConfig& cfg, const RootData& root, const Splitter& splitter, int depth,
                          Representation repr = Representation::enumerated);

/// Same function, every level converted to the compressed representation.
HarmonicModel compress(const HarmonicModel& model);

struct HarmonicVerdict {
  bool pass = true;
  int level = -1;  // first offending level
  std::optional<ValueClass> offending;
  std::string detail;

  explicit operator bool() const noexcept { return pass; }
};

/// Checks harmonicity at every vertex of levels 0..K-1 and parent/child
/// consistency between consecutive levels.
HarmonicVerdict check_harmonic(const HarmonicModel& model);

/// The 2-regular harmonic function u(j) = a*j + b on one ray and -a*j + b on the other.
HarmonicModel linear_2reg(const TreeConfig& cfg, const Rational& a, const Rational& b, int depth,
                          Representation repr = Representation::enumerated);

/// Test hook: adds `delta` to one record of level k without touching the
/// other levels, producing a model that is no longer harmonic.
HarmonicModel perturb(const HarmonicModel& model, int k, std::size_t index, const Rational& delta);

// ---------------------------------------------------------------------------

template <class F>
void LevelState::for_each_class(F&& f) const {
  if (const auto* e = std::get_if<Enumerated>(&state_)) {
    const EnumeratedLevel& lvl = **e;
    if (lvl.k == 0) {
      f(lvl.values.front(), lvl.values.front(), std::size_t{1});
      return;
    }
    for (std::size_t i = 0; i < lvl.size(); ++i) f(lvl.values[i], lvl.parent_value(i), std::size_t{1});
    return;
  }
  for (const auto& [cls, mult] : std::get<Compressed>(state_)->classes) f(cls.value, cls.parent, mult);
}

template <class F>
void for_each_family(const LevelState& upper, const LevelState& lower, F&& f) {
  if (upper.representation() != lower.representation() || lower.level() != upper.level() + 1) {
    throw Error(ErrorKind::representation_unsupported, "levels are not an adjacent pair of one representation");
  }
  if (upper.representation() == Representation::enumerated) {
    const EnumeratedLevel& up = upper.enumerated();
    const EnumeratedLevel& low = lower.enumerated();
    const std::size_t b = low.block();
    for (std::size_t i = 0; i < up.size(); ++i) {
      const Rational& parent = up.k == 0 ? up.values[i] : up.parent_value(i);
      f(up.values[i], parent, std::span<const Rational>(low.values.data() + i * b, b), std::size_t{1});
    }
    return;
  }
  const CompressedLevel& low = lower.compressed();
  for (const auto& [cls, mult] : upper.compressed().classes) {
    const auto it = low.sibling_tuples.find(cls);
    if (it == low.sibling_tuples.end()) {
      throw Error(ErrorKind::class_not_in_table, "no child tuple stored for a level-" +
                                                     std::to_string(upper.level()) + " class");
    }
    f(cls.value, cls.parent, std::span<const Rational>(it->second), mult);
  }
}

}  // namespace harmtree
