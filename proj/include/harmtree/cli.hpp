#pragma once

// Command-line driver: configuration, the four commands and their output formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "harmtree/builtins.hpp"
#include "harmtree/model.hpp"

namespace harmtree::cli {

enum class Command { sweep, verify, oracle_diff, plot_data };
enum class OutputFormat { csv, json, tsv };

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_verification = 2;
inline constexpr int exit_runtime = 3;

/// Selectable outputs. W resolves to W_d or W_2 from the degree.
enum class Selection { G, W, N, F, energy, aggregates };

struct RunConfig {
  Command command = Command::sweep;
  std::optional<std::string> model;       // built-in spec, e.g. "bounded3" or "linear2:1,2"
  std::optional<std::string> model_file;  // JSON model definition
  std::optional<int> d;
  std::string p = "2";
  std::optional<int> k_max;  // default: the model file's K, else 10
  Mode mode = Mode::exact;
  int precision = default_precision_bits;
  std::uint64_t seed = 0;
  std::vector<Selection> functionals = {Selection::G, Selection::W, Selection::N};
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> a;  // linear2 overrides
  std::optional<std::string> b;
  int magnitude = 9;  // random model bounds
  int denominator = 4;
  std::optional<Representation> representation;  // default: compressed
  std::optional<std::string> perturb;            // "k,index,delta"; test hook
};

using harmtree::to_string;
std::string to_string(Command c);
Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);
Mode parse_mode(const std::string& s);
Representation parse_representation(const std::string& s);
/// Comma list of G, W, N, F, energy, aggregates.
std::vector<Selection> parse_functionals(const std::string& s);

int exit_code_for(ErrorKind kind);

/// Runs a command, writing to cfg.out (or `out` when unset) and diagnostics
/// to `err`. Never throws; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_oracle_diff(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int emit_plot_data(const RunConfig& cfg, std::ostream& out);

// --- Shared pieces ----------------------------------------------------------

struct ResolvedModel {
  HarmonicModel model;
  std::string description;
};

/// Builds the configured model to `depth`, applying overrides and the perturbation hook.
ResolvedModel resolve_model(const RunConfig& cfg, int depth);
Rational exponent(const RunConfig& cfg);
int effective_k_max(const RunConfig& cfg);

struct Row {
  int k;
  std::string functional;
  std::string value_exact;
  std::string value_decimal;
  std::optional<bool> monotone_ok;  // nullopt for aggregate rows
};

struct Header {
  int d;
  std::string p;
  std::string mode;
  std::uint64_t seed;
  std::string model;
};

void write_rows(std::ostream& out, OutputFormat format, const Header& header, const std::vector<Row>& rows);
std::string csv_field(const std::string& s);

}  // namespace harmtree::cli
