// harmtree: sweep, verify, diff and plot harmonic functions on regular trees.

#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "harmtree/cli.hpp"

namespace {

struct RawOptions {
  std::optional<std::string> model;
  std::optional<std::string> model_file;
  std::optional<int> d;
  std::string p = "2";
  std::optional<int> k_max;
  std::string mode = "exact";
  int precision = harmtree::default_precision_bits;
  std::uint64_t seed = 0;
  std::string functional = "G,W,N";
  std::optional<std::string> out;
  std::string format = "csv";
  std::optional<std::string> a;
  std::optional<std::string> b;
  int magnitude = 9;
  int denominator = 4;
  std::optional<std::string> representation;
  std::optional<std::string> perturb;
};

void add_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--model", o.model, "built-in model: bounded3, needweight3, double_half3, linear2[:a,b], "
                                      "constant[:c], random");
  cmd->add_option("--model-file", o.model_file, "JSON model definition");
  cmd->add_option("--d", o.d, "tree degree");
  cmd->add_option("--p", o.p, "exponent (integer in exact mode)");
  cmd->add_option("--kmax", o.k_max, "largest functional index");
  cmd->add_option("--mode", o.mode, "exact or float");
  cmd->add_option("--precision", o.precision, "float mode precision in bits");
  cmd->add_option("--seed", o.seed, "seed for random models and sampled checks");
  cmd->add_option("--functional", o.functional, "comma list of G, W, N, F, energy, aggregates");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv, json or tsv");
  cmd->add_option("--a", o.a, "linear2 slope");
  cmd->add_option("--b", o.b, "linear2 offset");
  cmd->add_option("--magnitude", o.magnitude, "random model numerator bound");
  cmd->add_option("--denominator", o.denominator, "random model denominator bound");
  cmd->add_option("--repr", o.representation, "enumerated or compressed (default compressed)");
  cmd->add_option("--perturb", o.perturb, "test hook: k,index,delta added to one stored value");
}

harmtree::cli::RunConfig to_config(const std::string& command, const RawOptions& o) {
  using namespace harmtree::cli;
  RunConfig cfg;
  cfg.command = parse_command(command);
  cfg.model = o.model;
  cfg.model_file = o.model_file;
  cfg.d = o.d;
  cfg.p = o.p;
  cfg.k_max = o.k_max;
  cfg.mode = parse_mode(o.mode);
  cfg.precision = o.precision;
  cfg.seed = o.seed;
  cfg.functionals = parse_functionals(o.functional);
  cfg.out = o.out;
  cfg.format = parse_format(o.format);
  cfg.a = o.a;
  cfg.b = o.b;
  cfg.magnitude = o.magnitude;
  cfg.denominator = o.denominator;
  if (o.representation) cfg.representation = parse_representation(*o.representation);
  cfg.perturb = o.perturb;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic functions on regular trees: exact functionals and checks"};
  app.require_subcommand(1);
  RawOptions opts;
  const std::pair<const char*, const char*> commands[] = {
      {"sweep", "tabulate functionals with exact values and monotonicity flags"},
      {"verify", "check harmonicity, identities and monotonicity; exit 2 on failure"},
      {"oracle-diff", "compare the engine against closed forms of a named model"},
      {"plot-data", "gnuplot-ready k/value blocks per functional"},
  };
  for (const auto& [name, help] : commands) add_options(app.add_subcommand(name, help), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : harmtree::cli::exit_config;
  }

  harmtree::cli::RunConfig cfg;
  try {
    cfg = to_config(app.get_subcommands().front()->get_name(), opts);
  } catch (const harmtree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harmtree::cli::exit_config;
  }
  return harmtree::cli::run(cfg, std::cout, std::cerr);
}
