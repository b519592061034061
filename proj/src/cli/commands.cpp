#include <fstream>
#include <iostream>

#include <json.hpp>

#include "harmtree/cli.hpp"
#include "harmtree/functionals.hpp"
#include "harmtree/identities.hpp"
#include "harmtree/oracles.hpp"

namespace harmtree::cli {

namespace {

template <class T>
std::string exact_text(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return to_string(to_rational(v));  // the exact binary value of the float
  }
}

template <class T>
void append_series(const FunctionalSeries<T>& s, std::vector<Row>& rows) {
  const std::vector<bool> ok = cumulative_monotone(s);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    rows.push_back(Row{s.start + static_cast<int>(i), to_string(s.name), exact_text(s.values[i]),
                       to_decimal(s.values[i]), ok[i]});
  }
}

template <class T>
void append_aggregates(const HarmonicModel& model, const Rational& p, std::vector<Row>& rows) {
  for (int k = 0; k < model.depth(); ++k) {
    const LevelAggregates<T> agg = aggregates<T>(model, p, k);
    auto add = [&](const std::string& name, const T& v) {
      rows.push_back(Row{k, name, exact_text(v), to_decimal(v), std::nullopt});
    };
    add("H", agg.H);
    add("D", agg.D);
    add("N_k", agg.N);
    if (agg.C) add("C", *agg.C);
    if (agg.R) add("R", *agg.R);
  }
}

FunctionalName weiss_name(const HarmonicModel& model) {
  return model.degree() == 2 ? FunctionalName::W_2 : FunctionalName::W_d;
}

std::optional<FunctionalName> series_name(Selection s, const HarmonicModel& model) {
  switch (s) {
    case Selection::G: return FunctionalName::G;
    case Selection::W: return weiss_name(model);
    case Selection::N: return FunctionalName::almgren_N;
    case Selection::F: return FunctionalName::F;
    case Selection::energy: return FunctionalName::energy;
    case Selection::aggregates: return std::nullopt;
  }
  return std::nullopt;
}

/// Series for one selection. The Weiss functional always uses p = 2 sums.
template <class T>
FunctionalSeries<T> compute_series(const HarmonicModel& model, const PowerSums<T>& sums, FunctionalName name,
                                   std::optional<PowerSums<T>>& sums2) {
  if (name != FunctionalName::W_d && name != FunctionalName::W_2) return series(sums, name);
  if (!sums2) sums2 = sums.p == 2 ? sums : power_sums<T>(model, Rational(2));
  return series(*sums2, name);
}

template <class T>
std::vector<Row> sweep_rows(const HarmonicModel& model, const Rational& p, const std::vector<Selection>& selection) {
  const PowerSums<T> sums = power_sums<T>(model, p);
  std::optional<PowerSums<T>> sums2;
  std::vector<Row> rows;
  for (Selection s : selection) {
    if (const auto name = series_name(s, model)) {
      append_series(compute_series(model, sums, *name, sums2), rows);
    } else {
      append_aggregates<T>(model, p, rows);
    }
  }
  return rows;
}

template <class T>
void plot_blocks(const HarmonicModel& model, const Rational& p, const std::vector<Selection>& selection,
                 std::ostream& out) {
  const PowerSums<T> sums = power_sums<T>(model, p);
  std::optional<PowerSums<T>> sums2;
  bool first = true;
  for (Selection s : selection) {
    const auto name = series_name(s, model);
    if (!name) throw Error(ErrorKind::invalid_config, "plot-data takes series functionals, not aggregates");
    const FunctionalSeries<T> fs = compute_series(model, sums, *name, sums2);
    if (!first) out << '\n';
    first = false;
    out << "# " << to_string(*name) << '\n';
    for (std::size_t i = 0; i < fs.values.size(); ++i) {
      out << fs.start + static_cast<int>(i) << '\t' << to_decimal(fs.values[i]) << '\n';
    }
  }
}

Header make_header(const RunConfig& cfg, const ResolvedModel& rm) {
  return Header{rm.model.degree(), to_string(parse_rational(cfg.p)), cfg.mode == Mode::exact ? "exact" : "float",
                cfg.seed, rm.description};
}

}  // namespace

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const Rational p = exponent(cfg);
  const ResolvedModel rm = resolve_model(cfg, effective_k_max(cfg));
  const std::vector<Row> rows = cfg.mode == Mode::exact ? sweep_rows<Rational>(rm.model, p, cfg.functionals)
                                                        : sweep_rows<Real>(rm.model, p, cfg.functionals);
  write_rows(out, cfg.format, make_header(cfg, rm), rows);
  return exit_ok;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const Rational p = exponent(cfg);
  const int k_max = effective_k_max(cfg);
  const ResolvedModel rm = resolve_model(cfg, k_max + 1);
  VerifyOptions opts;
  opts.mode = cfg.mode;
  opts.identities.seed = cfg.seed;
  const VerificationReport report = verify_model(rm.model, p, k_max, opts);

  if (cfg.format == OutputFormat::json) {
    const Header h = make_header(cfg, rm);
    nlohmann::ordered_json j;
    j["header"] = {{"d", h.d}, {"p", h.p}, {"mode", h.mode}, {"seed", h.seed}, {"model", h.model}};
    j["pass"] = report.pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) j["checks"].push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out << j.dump(2) << '\n';
  } else {
    const char sep = cfg.format == OutputFormat::csv ? ',' : '\t';
    auto field = [&](const std::string& s) { return sep == ',' ? csv_field(s) : s; };
    out << "check" << sep << "status" << sep << "detail\n";
    for (const auto& c : report.checks) {
      out << field(c.name) << sep << (c.pass ? "PASS" : "FAIL") << sep << field(c.detail) << '\n';
    }
  }
  return report.pass() ? exit_ok : exit_verification;
}

int run_oracle_diff(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.mode != Mode::exact) throw Error(ErrorKind::invalid_config, "oracle-diff runs in exact mode only");
  if (!cfg.model) throw Error(ErrorKind::invalid_config, "oracle-diff needs --model naming the closed-form family");
  const OracleFamily family = parse_oracle_family(to_string(parse_model_spec(*cfg.model).family));
  const Rational p = exponent(cfg);
  const int k_max = effective_k_max(cfg);
  const ResolvedModel rm = resolve_model(cfg, k_max + 1);
  const OracleDiffReport report = oracle_diff(rm.model, family, static_cast<int>(integral_exponent(p)), k_max);

  const char sep = cfg.format == OutputFormat::tsv ? '\t' : ',';
  out << "k" << sep << "quantity" << sep << "engine" << sep << "oracle" << sep << "diff\n";
  for (const auto& row : report.rows) {
    out << row.k << sep << row.quantity << sep << to_string(row.engine) << sep << to_string(row.oracle) << sep
        << to_string(row.diff()) << '\n';
    if (row.diff() != 0) {
      err << "mismatch: " << row.quantity << "(" << row.k << ") differs by " << to_string(row.diff()) << '\n';
    }
  }
  return report.pass() ? exit_ok : exit_verification;
}

int emit_plot_data(const RunConfig& cfg, std::ostream& out) {
  const Rational p = exponent(cfg);
  const ResolvedModel rm = resolve_model(cfg, effective_k_max(cfg));
  if (cfg.mode == Mode::exact) {
    plot_blocks<Rational>(rm.model, p, cfg.functionals, out);
  } else {
    plot_blocks<Real>(rm.model, p, cfg.functionals, out);
  }
  return exit_ok;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.precision < 16) throw Error(ErrorKind::invalid_config, "precision must be at least 16 bits");
    PrecisionScope precision(static_cast<unsigned>(cfg.precision));

    std::ofstream file;
    if (cfg.out) {
      file.open(*cfg.out, std::ios::binary);
      if (!file) throw Error(ErrorKind::invalid_config, "cannot write '" + *cfg.out + "'");
    }
    std::ostream& sink = cfg.out ? static_cast<std::ostream&>(file) : out;

    switch (cfg.command) {
      case Command::sweep: return run_sweep(cfg, sink);
      case Command::verify: return run_verify(cfg, sink);
      case Command::oracle_diff: return run_oracle_diff(cfg, sink, err);
      case Command::plot_data: return emit_plot_data(cfg, sink);
    }
    return exit_config;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::invalid_argument& e) {
    err << "error: invalid-config: " << e.what() << '\n';
    return exit_config;
  } catch (const std::out_of_range& e) {
    err << "error: invalid-config: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_runtime;
  }
}

}  // namespace harmtree::cli
