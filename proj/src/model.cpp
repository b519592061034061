#include "harmtree/model.hpp"

#include <algorithm>

namespace harmtree {

namespace {

std::string describe(const ValueClass& cls) {
  return "(" + to_string(cls.value) + ", " + to_string(cls.parent) + ")";
}

LevelState extend_enumerated(const TreeConfig& cfg, const LevelState::Enumerated& state_ptr,
                             const Splitter& splitter) {
  const EnumeratedLevel& state = *state_ptr;
  auto next = std::make_shared<EnumeratedLevel>();
  next->k = state.k + 1;
  next->parent = state_ptr;

  if (state.k == 0) {
    next->values = state.root_children;
    return LevelState::Enumerated(std::move(next));
  }

  const auto b = static_cast<std::size_t>(cfg.degree() - 1);
  level_size_checked(cfg, next->k);
  next->values.resize(state.size() * b);

  const bool homogeneous = splitter.value_homogeneous();
  ValueClass cls;
  bool have_previous = false;
  for (std::size_t i = 0; i < state.size(); ++i) {
    std::span<Rational> out(next->values.data() + i * b, b);
    // Siblings often share a class; a value-homogeneous rule then repeats.
    if (homogeneous && have_previous && cls.value == state.values[i] && cls.parent == state.parent_value(i)) {
      std::copy(next->values.begin() + static_cast<std::ptrdiff_t>((i - 1) * b),
                next->values.begin() + static_cast<std::ptrdiff_t>(i * b), out.begin());
      continue;
    }
    cls.value = state.values[i];
    cls.parent = state.parent_value(i);
    if (homogeneous) {
      splitter.split(cfg, cls, out);
    } else {
      splitter.split_at(cfg, address_of(cfg, state.k, i), cls, out);
    }
    check_split_sum(cfg, cls, out);
    have_previous = true;
  }
  return LevelState::Enumerated(std::move(next));
}

LevelState extend_compressed(const TreeConfig& cfg, const CompressedLevel& state, const Splitter& splitter) {
  if (!splitter.value_homogeneous()) {
    throw Error(ErrorKind::representation_unsupported,
                "splitter '" + splitter.name() + "' depends on addresses and cannot drive compressed levels");
  }
  auto next = std::make_shared<CompressedLevel>();
  next->k = state.k + 1;

  if (state.k == 0) {
    const ValueClass& root = state.classes.begin()->first;
    next->sibling_tuples.emplace(root, state.root_children);
    for (const auto& c : state.root_children) next->classes[ValueClass{c, root.value}] += 1;
    return LevelState::Compressed(std::move(next));
  }

  std::vector<Rational> tuple(static_cast<std::size_t>(cfg.degree() - 1));
  for (const auto& [cls, mult] : state.classes) {
    splitter.split(cfg, cls, tuple);
    check_split_sum(cfg, cls, tuple);
    for (const auto& c : tuple) next->classes[ValueClass{c, cls.value}] += mult;
    next->sibling_tuples.emplace(cls, tuple);
  }
  return LevelState::Compressed(std::move(next));
}

HarmonicVerdict fail(int level, std::optional<ValueClass> cls, std::string detail) {
  HarmonicVerdict v;
  v.pass = false;
  v.level = level;
  v.offending = std::move(cls);
  v.detail = std::move(detail);
  return v;
}

}  // namespace

void validate(const TreeConfig& cfg, const RootData& root) {
  if (root.children.size() != static_cast<std::size_t>(cfg.degree())) {
    throw Error(ErrorKind::invalid_config, "root needs " + std::to_string(cfg.degree()) + " children, got " +
                                               std::to_string(root.children.size()));
  }
  Rational sum(0);
  for (const auto& c : root.children) sum += c;
  if (sum != Rational(cfg.degree()) * root.u0) {
    throw Error(ErrorKind::splitter_violates_sum,
                "root children sum to " + to_string(sum) + ", harmonicity needs " +
                    to_string(Rational(cfg.degree()) * root.u0));
  }
}

std::string to_string(Representation repr) {
  return repr == Representation::enumerated ? "enumerated" : "compressed";
}

int LevelState::level() const {
  return std::visit([](const auto& p) { return p->k; }, state_);
}

const EnumeratedLevel& LevelState::enumerated() const { return *enumerated_ptr(); }

const LevelState::Enumerated& LevelState::enumerated_ptr() const {
  if (const auto* e = std::get_if<Enumerated>(&state_)) return *e;
  throw Error(ErrorKind::representation_unsupported, "level is compressed");
}

const CompressedLevel& LevelState::compressed() const {
  if (const auto* c = std::get_if<Compressed>(&state_)) return **c;
  throw Error(ErrorKind::representation_unsupported, "level is enumerated");
}

Integer LevelState::vertex_count() const {
  if (const auto* e = std::get_if<Enumerated>(&state_)) return Integer((*e)->size());
  Integer total(0);
  for (const auto& [cls, mult] : std::get<Compressed>(state_)->classes) total += mult;
  return total;
}

std::size_t LevelState::record_count() const {
  if (const auto* e = std::get_if<Enumerated>(&state_)) return (*e)->size();
  return std::get<Compressed>(state_)->classes.size();
}

LevelState root_state(const TreeConfig& cfg, const RootData& root, Representation repr) {
  validate(cfg, root);
  if (repr == Representation::enumerated) {
    auto lvl = std::make_shared<EnumeratedLevel>();
    lvl->values = {root.u0};
    lvl->root_children = root.children;
    return LevelState::Enumerated(std::move(lvl));
  }
  auto lvl = std::make_shared<CompressedLevel>();
  lvl->classes.emplace(ValueClass{root.u0, root.u0}, Integer(1));
  lvl->root_children = root.children;
  return LevelState::Compressed(std::move(lvl));
}

LevelState extend(const TreeConfig& cfg, const LevelState& state, const Splitter& splitter) {
  if (state.representation() == Representation::enumerated) {
    return extend_enumerated(cfg, state.enumerated_ptr(), splitter);
  }
  return extend_compressed(cfg, state.compressed(), splitter);
}

LevelState compress(const LevelState& state) {
  if (state.representation() == Representation::compressed) return state;
  const EnumeratedLevel& lvl = state.enumerated();
  auto out = std::make_shared<CompressedLevel>();
  out->k = lvl.k;
  out->root_children = lvl.root_children;
  state.for_each_class([&](const Rational& value, const Rational& parent, const auto&) {
    out->classes[ValueClass{value, parent}] += 1;
  });
  if (lvl.k >= 1) {
    const EnumeratedLevel& up = *lvl.parent;
    const std::size_t b = lvl.block();
    for (std::size_t j = 0; j < up.size(); ++j) {
      ValueClass key{up.values[j], up.k == 0 ? up.values[j] : up.parent_value(j)};
      std::vector<Rational> tuple(lvl.values.begin() + static_cast<std::ptrdiff_t>(j * b),
                                  lvl.values.begin() + static_cast<std::ptrdiff_t>((j + 1) * b));
      const auto [it, inserted] = out->sibling_tuples.emplace(key, tuple);
      if (!inserted && it->second != tuple) {
        throw Error(ErrorKind::representation_unsupported,
                    "class " + describe(key) + " has different child tuples at different addresses");
      }
    }
  }
  return LevelState::Compressed(std::move(out));
}

bool states_equivalent(const EnumeratedLevel& enumerated, const CompressedLevel& compressed) {
  if (enumerated.k != compressed.k) return false;
  ClassMap counts;
  if (enumerated.k == 0) {
    counts.emplace(ValueClass{enumerated.values.front(), enumerated.values.front()}, Integer(1));
  } else {
    for (std::size_t i = 0; i < enumerated.size(); ++i) {
      counts[ValueClass{enumerated.values[i], enumerated.parent_value(i)}] += 1;
    }
  }
  return counts == compressed.classes;
}

HarmonicModel::HarmonicModel(TreeConfig cfg, RootData root, Splitter splitter, std::vector<LevelState> ladder)
    : cfg_(cfg), root_(std::move(root)), splitter_(std::move(splitter)), ladder_(std::move(ladder)) {
  if (ladder_.empty()) throw Error(ErrorKind::invalid_config, "model needs at least the root level");
  for (std::size_t k = 0; k < ladder_.size(); ++k) {
    if (ladder_[k].level() != static_cast<int>(k)) {
      throw Error(ErrorKind::invalid_config, "ladder entry " + std::to_string(k) + " holds level " +
                                                 std::to_string(ladder_[k].level()));
    }
  }
}

const LevelState& HarmonicModel::level(int k) const {
  require_depth(k, "level " + std::to_string(k));
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  return ladder_[static_cast<std::size_t>(k)];
}

void HarmonicModel::require_depth(int k, const std::string& what) const {
  if (k > depth()) {
    throw Error(ErrorKind::depth_insufficient, what + " needs depth " + std::to_string(k) +
                                                   ", model has depth " + std::to_string(depth()));
  }
}

HarmonicModel HarmonicModel::with_level(int k, LevelState state) const {
  std::vector<LevelState> ladder = ladder_;
  ladder.at(static_cast<std::size_t>(k)) = std::move(state);
  return HarmonicModel(cfg_, root_, splitter_, std::move(ladder));
}

HarmonicModel build_model(const TreeConfig& cfg, const RootData& root, const Splitter& splitter, int depth,
                          Representation repr) {
  if (depth < 0) throw Error(ErrorKind::invalid_config, "depth must be non-negative");
  std::vector<LevelState> ladder;
  ladder.reserve(static_cast<std::size_t>(depth) + 1);
  ladder.push_back(root_state(cfg, root, repr));
  for (int k = 0; k < depth; ++k) ladder.push_back(extend(cfg, ladder.back(), splitter));
  return HarmonicModel(cfg, root, splitter, std::move(ladder));
}

HarmonicModel compress(const HarmonicModel& model) {
  std::vector<LevelState> ladder;
  ladder.reserve(model.ladder().size());
  for (const auto& lvl : model.ladder()) ladder.push_back(compress(lvl));
  return HarmonicModel(model.cfg(), model.root(), model.splitter(), std::move(ladder));
}

HarmonicVerdict check_harmonic(const HarmonicModel& model) {
  const Rational d(model.degree());
  for (int k = 0; k < model.depth(); ++k) {
    const LevelState& upper = model.level(k);
    const LevelState& lower = model.level(k + 1);
    if (upper.representation() != lower.representation()) {
      return fail(k, std::nullopt, "levels " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                       " use different representations");
    }

    if (upper.representation() == Representation::enumerated) {
      const EnumeratedLevel& up = upper.enumerated();
      const EnumeratedLevel& low = lower.enumerated();
      if (low.parent.get() != &up && (!low.parent || low.parent->values != up.values)) {
        return fail(k, std::nullopt,
                    "parent values recorded at level " + std::to_string(k + 1) + " disagree with level " +
                        std::to_string(k));
      }
      if (low.size() != up.size() * static_cast<std::size_t>(model.cfg().branching(k))) {
        return fail(k, std::nullopt, "level " + std::to_string(k + 1) + " has the wrong vertex count");
      }
    }

    HarmonicVerdict verdict;
    try {
      for_each_family(upper, lower,
                      [&](const Rational& u, const Rational& up, std::span<const Rational> kids, const auto&) {
                        if (!verdict.pass) return;
                        Rational sum(0);
                        for (const auto& c : kids) sum += c;
                        if (k > 0) sum += up;
                        if (sum != d * u) {
                          verdict = fail(k, ValueClass{u, up},
                                         "neighbors of a level-" + std::to_string(k) + " vertex with value " +
                                             to_string(u) + " sum to " + to_string(sum) + ", expected " +
                                             to_string(d * u));
                        }
                      });
    } catch (const Error& e) {
      return fail(k, std::nullopt, e.what());
    }
    if (!verdict.pass) return verdict;

    if (upper.representation() == Representation::compressed) {
      ClassMap expected;
      for_each_family(upper, lower,
                      [&](const Rational& u, const Rational&, std::span<const Rational> kids, const auto& m) {
                        for (const auto& c : kids) expected[ValueClass{c, u}] += m;
                      });
      if (expected != lower.compressed().classes) {
        return fail(k, std::nullopt,
                    "class multiplicities at level " + std::to_string(k + 1) +
                        " do not follow from level " + std::to_string(k));
      }
    }
  }
  return HarmonicVerdict{};
}

HarmonicModel linear_2reg(const TreeConfig& cfg, const Rational& a, const Rational& b, int depth,
                          Representation repr) {
  if (cfg.degree() != 2) {
    throw Error(ErrorKind::wrong_degree, "linear_2reg is the 2-regular family, got d=" +
                                             std::to_string(cfg.degree()));
  }
  return build_model(cfg, RootData{b, {b + a, b - a}}, Splitter::equal_split(), depth, repr);
}

HarmonicModel perturb(const HarmonicModel& model, int k, std::size_t index, const Rational& delta) {
  const LevelState& lvl = model.level(k);
  if (lvl.representation() == Representation::enumerated) {
    auto copy = std::make_shared<EnumeratedLevel>(lvl.enumerated());
    copy->values.at(index) += delta;
    return model.with_level(k, LevelState::Enumerated(std::move(copy)));
  }
  auto copy = std::make_shared<CompressedLevel>(lvl.compressed());
  if (index >= copy->classes.size()) throw Error(ErrorKind::invalid_address, "class index out of range");
  auto it = std::next(copy->classes.begin(), static_cast<std::ptrdiff_t>(index));
  ValueClass moved{it->first.value + delta, it->first.parent};
  if (--it->second == 0) copy->classes.erase(it);
  copy->classes[moved] += 1;
  return model.with_level(k, LevelState::Compressed(std::move(copy)));
}

}  // namespace harmtree
