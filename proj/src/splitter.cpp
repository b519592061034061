#include "harmtree/splitter.hpp"

#include <algorithm>

namespace harmtree {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_arity(const TreeConfig& cfg, std::size_t got, const std::string& who) {
  if (got != static_cast<std::size_t>(cfg.degree() - 1)) {
    throw Error(ErrorKind::splitter_violates_sum,
                who + " produced " + std::to_string(got) + " children, expected " +
                    std::to_string(cfg.degree() - 1));
  }
}

std::string describe(const ValueClass& cls) {
  return "(" + to_string(cls.value) + ", " + to_string(cls.parent) + ")";
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a combined word.
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational draw_rational(std::mt19937_64& rng, int magnitude, int denominator) {
  const auto span = static_cast<std::uint64_t>(2 * magnitude + 1);
  const auto num = static_cast<long>(rng() % span) - magnitude;
  const auto den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(denominator));
  return Rational(num, den);
}

std::string Splitter::name() const {
  return std::visit(overloaded{
                        [](const EqualSplit&) -> std::string { return "equal_split"; },
                        [](const DoubleHalf&) -> std::string { return "double_half"; },
                        [](const RandomSplit&) -> std::string { return "random"; },
                        [](const TableSplit&) -> std::string { return "table"; },
                        [](const CustomSplit& c) -> std::string { return c.name; },
                    },
                    kind_);
}

void Splitter::split(const TreeConfig& cfg, const ValueClass& cls, std::span<Rational> out) const {
  require_arity(cfg, out.size(), "output span");
  const int d = cfg.degree();
  std::visit(
      overloaded{
          [&](const EqualSplit&) {
            const Rational child = (Rational(d) * cls.value - cls.parent) / Rational(d - 1);
            std::fill(out.begin(), out.end(), child);
          },
          [&](const DoubleHalf&) {
            if (d != 3) throw Error(ErrorKind::wrong_degree, "double_half is defined on the 3-regular tree");
            const Rational twice = 2 * cls.value;
            const Rational half = cls.value / 2;
            if (cls.parent == twice) {
              out[0] = half;
              out[1] = half;
            } else if (cls.parent == half) {
              out[0] = twice;
              out[1] = half;
            } else {
              throw Error(ErrorKind::class_not_in_table,
                          "double_half has no rule for class " + describe(cls));
            }
          },
          [&](const RandomSplit& r) {
            if (r.magnitude < 0 || r.denominator < 1) {
              throw Error(ErrorKind::invalid_config, "random splitter needs magnitude >= 0, denominator >= 1");
            }
            std::mt19937_64 rng(mix_seed(mix_seed(r.seed, stable_hash(cls.value)), stable_hash(cls.parent)));
            Rational remaining = Rational(d) * cls.value - cls.parent;
            for (std::size_t i = 0; i + 1 < out.size(); ++i) {
              out[i] = draw_rational(rng, r.magnitude, r.denominator);
              remaining -= out[i];
            }
            out.back() = remaining;
          },
          [&](const TableSplit& t) {
            const auto it = t.table.find(cls);
            if (it == t.table.end()) {
              throw Error(ErrorKind::class_not_in_table, "no table entry for class " + describe(cls));
            }
            require_arity(cfg, it->second.size(), "table entry " + describe(cls));
            std::copy(it->second.begin(), it->second.end(), out.begin());
          },
          [&](const CustomSplit& c) {
            throw Error(ErrorKind::representation_unsupported,
                        "splitter '" + c.name + "' depends on the address; use split_at");
          },
      },
      kind_);
}

void Splitter::split_at(const TreeConfig& cfg, const VertexAddress& addr, const ValueClass& cls,
                        std::span<Rational> out) const {
  if (const auto* custom = std::get_if<CustomSplit>(&kind_)) {
    const std::vector<Rational> produced = custom->rule(cfg, addr, cls.value, cls.parent);
    require_arity(cfg, produced.size(), "splitter '" + custom->name + "'");
    require_arity(cfg, out.size(), "output span");
    std::copy(produced.begin(), produced.end(), out.begin());
    return;
  }
  split(cfg, cls, out);
}

void check_split_sum(const TreeConfig& cfg, const ValueClass& cls, std::span<const Rational> children) {
  Rational sum(0);
  for (const auto& c : children) sum += c;
  const Rational expected = Rational(cfg.degree()) * cls.value - cls.parent;
  if (sum != expected) {
    throw Error(ErrorKind::splitter_violates_sum,
                "children of class " + describe(cls) + " sum to " + to_string(sum) + ", harmonicity needs " +
                    to_string(expected));
  }
}

}  // namespace harmtree
