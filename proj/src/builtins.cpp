#include "harmtree/builtins.hpp"

#include <random>

namespace harmtree {

namespace {

std::vector<std::string> split_args(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

constexpr std::uint64_t root_stream = 0x726f6f74;  // keeps root draws apart from splitter draws

}  // namespace

std::string to_string(BuiltinFamily family) {
  switch (family) {
    case BuiltinFamily::bounded3: return "bounded3";
    case BuiltinFamily::needweight3: return "needweight3";
    case BuiltinFamily::double_half3: return "double_half3";
    case BuiltinFamily::linear2: return "linear2";
    case BuiltinFamily::constant: return "constant";
    case BuiltinFamily::random: return "random";
  }
  return "unknown";
}

const std::vector<BuiltinFamily>& all_builtin_families() {
  static const std::vector<BuiltinFamily> families = {
      BuiltinFamily::bounded3, BuiltinFamily::needweight3, BuiltinFamily::double_half3,
      BuiltinFamily::linear2,  BuiltinFamily::constant,    BuiltinFamily::random,
  };
  return families;
}

ModelSpec parse_model_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  ModelSpec spec;
  bool found = false;
  for (BuiltinFamily f : all_builtin_families()) {
    if (to_string(f) == name) {
      spec.family = f;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::invalid_config, "unknown model '" + name + "'");
  if (args.empty()) return spec;

  const std::vector<std::string> parts = split_args(args);
  switch (spec.family) {
    case BuiltinFamily::linear2:
      if (parts.size() != 2) throw Error(ErrorKind::invalid_config, "linear2 takes two parameters a,b");
      spec.a = parse_rational(parts[0]);
      spec.b = parse_rational(parts[1]);
      break;
    case BuiltinFamily::constant:
      if (parts.size() != 1) throw Error(ErrorKind::invalid_config, "constant takes one parameter");
      spec.c = parse_rational(parts[0]);
      break;
    default:
      throw Error(ErrorKind::invalid_config, "model '" + name + "' takes no parameters");
  }
  return spec;
}

std::string to_string(const ModelSpec& spec) {
  switch (spec.family) {
    case BuiltinFamily::linear2: return "linear2:" + to_string(spec.a) + "," + to_string(spec.b);
    case BuiltinFamily::constant: return "constant:" + to_string(spec.c);
    default: return to_string(spec.family);
  }
}

std::optional<int> fixed_degree(BuiltinFamily family) {
  switch (family) {
    case BuiltinFamily::bounded3:
    case BuiltinFamily::needweight3:
    case BuiltinFamily::double_half3: return 3;
    case BuiltinFamily::linear2: return 2;
    default: return std::nullopt;
  }
}

RootData bounded3_root() { return RootData{Rational(0), {Rational(1), Rational(-1), Rational(0)}}; }

RootData needweight3_root() { return RootData{Rational(0), {Rational(1), Rational(-1, 2), Rational(-1, 2)}}; }

RootData double_half3_root() { return RootData{Rational(1), {Rational(2), Rational(1, 2), Rational(1, 2)}}; }

RootData random_root(const TreeConfig& cfg, std::uint64_t seed, int magnitude, int denominator) {
  std::mt19937_64 rng(mix_seed(seed, root_stream));
  RootData root;
  root.u0 = draw_rational(rng, magnitude, denominator);
  Rational remaining = Rational(cfg.degree()) * root.u0;
  for (int i = 0; i + 1 < cfg.degree(); ++i) {
    root.children.push_back(draw_rational(rng, magnitude, denominator));
    remaining -= root.children.back();
  }
  root.children.push_back(remaining);
  return root;
}

HarmonicModel build_builtin(const ModelSpec& spec, std::optional<int> d, int depth, Representation repr) {
  const std::optional<int> fixed = fixed_degree(spec.family);
  if (fixed && d && *d != *fixed) {
    throw Error(ErrorKind::family_model_mismatch, to_string(spec.family) + " lives on the " +
                                                      std::to_string(*fixed) + "-regular tree, got d=" +
                                                      std::to_string(*d));
  }
  if (!fixed && !d) throw Error(ErrorKind::invalid_config, to_string(spec.family) + " needs a degree");
  const TreeConfig cfg(fixed ? *fixed : *d);

  switch (spec.family) {
    case BuiltinFamily::bounded3:
      return build_model(cfg, bounded3_root(), Splitter::equal_split(), depth, repr);
    case BuiltinFamily::needweight3:
      return build_model(cfg, needweight3_root(), Splitter::equal_split(), depth, repr);
    case BuiltinFamily::double_half3:
      return build_model(cfg, double_half3_root(), Splitter::double_half(), depth, repr);
    case BuiltinFamily::linear2:
      return linear_2reg(cfg, spec.a, spec.b, depth, repr);
    case BuiltinFamily::constant:
      return build_model(cfg, RootData{spec.c, std::vector<Rational>(static_cast<std::size_t>(cfg.degree()), spec.c)},
                         Splitter::equal_split(), depth, repr);
    case BuiltinFamily::random:
      return build_model(cfg, random_root(cfg, spec.seed, spec.magnitude, spec.denominator),
                         Splitter::random(spec.seed, spec.magnitude, spec.denominator), depth, repr);
  }
  throw Error(ErrorKind::invalid_config, "unknown model family");
}

}  // namespace harmtree
