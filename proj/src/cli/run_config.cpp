#include <sstream>

#include "harmtree/cli.hpp"
#include "harmtree/model_io.hpp"

namespace harmtree::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

constexpr int default_k_max = 10;

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
    case Command::oracle_diff: return "oracle-diff";
    case Command::plot_data: return "plot-data";
  }
  return "unknown";
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::sweep, Command::verify, Command::oracle_diff, Command::plot_data}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorKind::invalid_config, "unknown command '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "tsv") return OutputFormat::tsv;
  throw Error(ErrorKind::invalid_config, "unknown format '" + s + "'");
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw Error(ErrorKind::invalid_config, "unknown mode '" + s + "'");
}

Representation parse_representation(const std::string& s) {
  if (s == "enumerated") return Representation::enumerated;
  if (s == "compressed") return Representation::compressed;
  throw Error(ErrorKind::invalid_config, "unknown representation '" + s + "'");
}

std::vector<Selection> parse_functionals(const std::string& s) {
  std::vector<Selection> out;
  for (const std::string& name : split(s, ',')) {
    if (name == "G") {
      out.push_back(Selection::G);
    } else if (name == "W" || name == "W_d" || name == "W_2") {
      out.push_back(Selection::W);
    } else if (name == "N") {
      out.push_back(Selection::N);
    } else if (name == "F") {
      out.push_back(Selection::F);
    } else if (name == "energy") {
      out.push_back(Selection::energy);
    } else if (name == "aggregates") {
      out.push_back(Selection::aggregates);
    } else {
      throw Error(ErrorKind::invalid_config, "unknown functional '" + name + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::invalid_config, "empty functional list");
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_config:
    case ErrorKind::parse_error:
    case ErrorKind::family_model_mismatch:
    case ErrorKind::nonintegral_p_in_exact_mode:
    case ErrorKind::unsupported_p:
    case ErrorKind::wrong_degree:
      return exit_config;
    default:
      return exit_runtime;
  }
}

Rational exponent(const RunConfig& cfg) {
  const Rational p = parse_rational(cfg.p);
  if (p < 1) throw Error(ErrorKind::unsupported_p, "p must be at least 1");
  if (cfg.mode == Mode::exact) integral_exponent(p);
  return p;
}

int effective_k_max(const RunConfig& cfg) {
  int k = default_k_max;
  if (cfg.k_max) {
    k = *cfg.k_max;
  } else if (cfg.model_file) {
    k = load_model_definition(*cfg.model_file).K;
  }
  if (k < 1) throw Error(ErrorKind::invalid_config, "kmax must be at least 1");
  return k;
}

ResolvedModel resolve_model(const RunConfig& cfg, int depth) {
  Representation repr = Representation::compressed;
  if (cfg.representation) {
    repr = *cfg.representation;
  } else if (cfg.perturb) {
    repr = Representation::enumerated;
  }

  std::optional<HarmonicModel> model;
  std::string description;
  if (cfg.model_file) {
    const ModelDefinition def = load_model_definition(*cfg.model_file);
    if (cfg.d && *cfg.d != def.d) {
      throw Error(ErrorKind::family_model_mismatch,
                  "--d " + std::to_string(*cfg.d) + " contradicts the model file's d=" + std::to_string(def.d));
    }
    model.emplace(build_model(TreeConfig(def.d), def.root, def.splitter, depth, repr));
    description = *cfg.model_file;
  } else if (cfg.model) {
    ModelSpec spec = parse_model_spec(*cfg.model);
    if (cfg.a || cfg.b) {
      if (spec.family != BuiltinFamily::linear2) throw Error(ErrorKind::invalid_config, "--a/--b apply to linear2 only");
      if (cfg.a) spec.a = parse_rational(*cfg.a);
      if (cfg.b) spec.b = parse_rational(*cfg.b);
    }
    spec.seed = cfg.seed;
    spec.magnitude = cfg.magnitude;
    spec.denominator = cfg.denominator;
    model.emplace(build_builtin(spec, cfg.d, depth, repr));
    description = to_string(spec);
  } else {
    throw Error(ErrorKind::invalid_config, "one of --model or --model-file is required");
  }

  if (cfg.perturb) {
    const std::vector<std::string> parts = split(*cfg.perturb, ',');
    if (parts.size() != 3) throw Error(ErrorKind::invalid_config, "--perturb expects k,index,delta");
    const int k = std::stoi(parts[0]);
    const auto index = static_cast<std::size_t>(std::stoul(parts[1]));
    model.emplace(perturb(*model, k, index, parse_rational(parts[2])));
    description += " (perturbed)";
  }
  return ResolvedModel{std::move(*model), description};
}

}  // namespace harmtree::cli
