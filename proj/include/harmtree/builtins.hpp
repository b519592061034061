#pragma once

// Named harmonic models: the worked examples plus constant and random families.
//
//   bounded3      d=3, root 0, children (1, -1, 0), equal split
//   needweight3   d=3, root 0, children (1, -1/2, -1/2), equal split
//   double_half3  d=3, root 1, children (2, 1/2, 1/2), double-half splitter
//   linear2:a,b   d=2, u(j) = a*j + b on one ray, -a*j + b on the other
//   constant:c    any d, u = c everywhere
//   random        any d, random root data and random splitter from the seed

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmtree/model.hpp"

namespace harmtree {

enum class BuiltinFamily { bounded3, needweight3, double_half3, linear2, constant, random };

std::string to_string(BuiltinFamily family);
const std::vector<BuiltinFamily>& all_builtin_families();

struct ModelSpec {
  BuiltinFamily family = BuiltinFamily::bounded3;
  Rational a{1};  // linear2 slope
  Rational b{0};  // linear2 offset
  Rational c{1};  // constant value
  std::uint64_t seed = 0;  // random
  int magnitude = 9;       // random: numerator bound
  int denominator = 4;     // random: denominator bound
};

/// "bounded3", "linear2:1,2", "constant:5/2", "random". Throws invalid_config.
ModelSpec parse_model_spec(const std::string& text);
std::string to_string(const ModelSpec& spec);

/// Degree the family is tied to, if any.
std::optional<int> fixed_degree(BuiltinFamily family);

RootData bounded3_root();
RootData needweight3_root();
RootData double_half3_root();

/// u0 and the first d-1 root children drawn from the seed; the last child is forced.
RootData random_root(const TreeConfig& cfg, std::uint64_t seed, int magnitude = 9, int denominator = 4);

/// Builds the model to `depth`. A degree that contradicts the family throws
/// family_model_mismatch; `d` may be omitted for fixed-degree families.
HarmonicModel build_builtin(const ModelSpec& spec, std::optional<int> d, int depth,
                            Representation repr = Representation::enumerated);

}  // namespace harmtree
