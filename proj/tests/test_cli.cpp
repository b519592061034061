#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "harmtree/cli.hpp"

using namespace harmtree;
using namespace harmtree::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cfg(const RunConfig& cfg) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(Command command, const std::string& model, int k_max) {
  RunConfig cfg;
  cfg.command = command;
  cfg.model = model;
  cfg.k_max = k_max;
  return cfg;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(HARMTREE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("harmtree_test_" + name);
}

}  // namespace

TEST(Sweep, BoundedExampleRows) {
  const Outcome o = run_cfg(config(Command::sweep, "bounded3", 5));
  ASSERT_EQ(o.code, exit_ok) << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "k,functional,value_exact,value_decimal,monotone_ok");
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 15u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(rows[i][2], "2/1");
  // W(5) = 2*5 - 4 + 8/32 - 4/1024
  EXPECT_EQ(rows[9][1], "W_d");
  EXPECT_EQ(rows[9][2], "1599/256");
  EXPECT_EQ(rows[9][3], "6.24609375");
  for (const auto& r : rows) EXPECT_EQ(r[4], "true");
}

TEST(Sweep, ConstantModelIsZero) {
  RunConfig cfg = config(Command::sweep, "constant:0", 6);
  cfg.d = 4;
  cfg.functionals = {Selection::G, Selection::N};
  const Outcome o = run_cfg(cfg);
  ASSERT_EQ(o.code, exit_ok) << o.err;
  ASSERT_EQ(csv_rows(o.out).size(), 12u);
  for (const auto& r : csv_rows(o.out)) {
    EXPECT_EQ(r[2], "0/1");
    EXPECT_EQ(r[3], "0");
  }
}

TEST(Sweep, NonzeroConstantOnlyShiftsNAtTheRoot) {
  // u = 5/2, d = 4, p = 2: H_0 = 25/4 and H_k = 4 * 3^(k-1) * 25/4, so
  // N(0) = H_1/3 - H_0 = 25/12 and N(k) = 0 for k >= 1. G vanishes.
  RunConfig cfg = config(Command::sweep, "constant:5/2", 6);
  cfg.d = 4;
  cfg.functionals = {Selection::G, Selection::N};
  const Outcome o = run_cfg(cfg);
  ASSERT_EQ(o.code, exit_ok) << o.err;
  for (const auto& r : csv_rows(o.out)) {
    const bool root_n = r[1] == "Almgren_N" && r[0] == "0";
    EXPECT_EQ(r[2], root_n ? "25/12" : "0/1") << r[0] << " " << r[1];
  }
}

TEST(Sweep, RandomSeedFortyTwo) {
  RunConfig cfg = config(Command::sweep, "random", 10);
  cfg.d = 4;
  cfg.seed = 42;
  const Outcome o = run_cfg(cfg);
  ASSERT_EQ(o.code, exit_ok) << o.err;
  const auto rows = csv_rows(o.out);
  EXPECT_EQ(rows.size(), 30u);
  for (const auto& r : rows) EXPECT_EQ(r[4], "true");
}

TEST(Sweep, TwoRegularTreeUsesW2) {
  RunConfig cfg = config(Command::sweep, "linear2", 4);
  cfg.a = "1";
  cfg.b = "2";
  cfg.functionals = {Selection::W};
  const auto rows = csv_rows(run_cfg(cfg).out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][1], "W_2");
  EXPECT_EQ(rows[0][2], "-3/1");
  EXPECT_EQ(rows[3][2], "3/4");
}

TEST(Sweep, AggregatesRowsAreNotFlagged) {
  RunConfig cfg = config(Command::sweep, "needweight3", 3);
  cfg.functionals = {Selection::aggregates};
  const auto rows = csv_rows(run_cfg(cfg).out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0][1], "H");
  EXPECT_EQ(rows[1][1], "D");
  EXPECT_EQ(rows[1][2], "3/2");
  for (const auto& r : rows) EXPECT_EQ(r[4], "na");
}

TEST(Sweep, JsonMirrorsRows) {
  RunConfig cfg = config(Command::sweep, "bounded3", 3);
  cfg.format = OutputFormat::json;
  const auto j = nlohmann::json::parse(run_cfg(cfg).out);
  EXPECT_EQ(j["header"]["d"], 3);
  EXPECT_EQ(j["header"]["p"], "2/1");
  EXPECT_EQ(j["header"]["mode"], "exact");
  EXPECT_EQ(j["header"]["seed"], 0);
  EXPECT_EQ(j["header"]["model"], "bounded3");
  ASSERT_EQ(j["rows"].size(), 9u);
  EXPECT_EQ(j["rows"][0]["functional"], "G");
  EXPECT_EQ(j["rows"][0]["value_exact"], "2/1");
  EXPECT_EQ(j["rows"][0]["monotone_ok"], true);
}

TEST(Sweep, FloatModeFractionalExponent) {
  RunConfig cfg = config(Command::sweep, "bounded3", 6);
  cfg.mode = Mode::floating;
  cfg.p = "3/2";
  const Outcome o = run_cfg(cfg);
  ASSERT_EQ(o.code, exit_ok) << o.err;
  const auto rows = csv_rows(o.out);
  EXPECT_EQ(rows.size(), 18u);
  EXPECT_EQ(rows[0][3], "2");
  for (const auto& r : rows) EXPECT_EQ(r[4], "true");
}

TEST(Sweep, ConfigErrors) {
  RunConfig no_model;
  no_model.command = Command::sweep;
  EXPECT_EQ(run_cfg(no_model).code, exit_config);

  RunConfig bad_p = config(Command::sweep, "bounded3", 3);
  bad_p.p = "3/2";
  EXPECT_EQ(run_cfg(bad_p).code, exit_config);

  RunConfig bad_model = config(Command::sweep, "octahedron", 3);
  EXPECT_EQ(run_cfg(bad_model).code, exit_config);

  RunConfig random_no_d = config(Command::sweep, "random", 3);
  EXPECT_EQ(run_cfg(random_no_d).code, exit_config);

  RunConfig wrong_d = config(Command::sweep, "bounded3", 3);
  wrong_d.d = 5;
  EXPECT_EQ(run_cfg(wrong_d).code, exit_config);

  EXPECT_THROW(parse_functionals("G,Q"), Error);
}

TEST(Sweep, RuntimeErrorsExitThree) {
  const auto path = temp_path("table.json");
  std::ofstream(path) << R"({"d": 3, "root": {"u0": "0", "children": ["1", "-1", "0"]},
    "splitter": {"kind": "table", "table": [{"value": "1", "parent": "0", "children": ["3/2", "3/2"]}]}, "K": 3})";
  RunConfig cfg;
  cfg.command = Command::sweep;
  cfg.model_file = path.string();
  const Outcome o = run_cfg(cfg);
  EXPECT_EQ(o.code, exit_runtime);
  EXPECT_NE(o.err.find("class-not-in-table"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Sweep, ModelFileSuppliesDepth) {
  const auto path = temp_path("needweight.json");
  std::ofstream(path) << R"({"d": 3, "root": {"u0": "0", "children": ["1", "-1/2", "-1/2"]},
    "splitter": {"kind": "equal_split"}, "K": 4})";
  RunConfig cfg;
  cfg.command = Command::sweep;
  cfg.model_file = path.string();
  cfg.functionals = {Selection::G};
  const auto rows = csv_rows(run_cfg(cfg).out);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_EQ(r[2], "3/2");
  std::filesystem::remove(path);
}

TEST(Verify, NeedweightPasses) {
  const Outcome o = run_cfg(config(Command::verify, "needweight3", 10));
  EXPECT_EQ(o.code, exit_ok) << o.out;
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Verify, PerturbationFailsWithHarmonicityViolation) {
  RunConfig cfg = config(Command::verify, "needweight3", 10);
  cfg.perturb = "1,0,1";
  const Outcome o = run_cfg(cfg);
  EXPECT_EQ(o.code, exit_verification);
  EXPECT_NE(o.out.find("harmonicity(c1c2v),FAIL"), std::string::npos) << o.out;
}

TEST(Verify, LinearFamilyToFifty) {
  RunConfig cfg = config(Command::verify, "linear2", 50);
  cfg.a = "1";
  cfg.b = "1";
  const Outcome o = run_cfg(cfg);
  EXPECT_EQ(o.code, exit_ok) << o.out;
  EXPECT_NE(o.out.find("W_2_limit,PASS"), std::string::npos);
}

TEST(Verify, JsonReport) {
  RunConfig cfg = config(Command::verify, "bounded3", 4);
  cfg.format = OutputFormat::json;
  const auto j = nlohmann::json::parse(run_cfg(cfg).out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["checks"][0]["check"], "harmonicity(c1c2v)");
}

TEST(OracleDiffCommand, ExitCodes) {
  RunConfig bounded = config(Command::oracle_diff, "bounded3", 20);
  EXPECT_EQ(run_cfg(bounded).code, exit_ok);

  RunConfig dh = config(Command::oracle_diff, "double_half3", 12);
  dh.p = "3";
  EXPECT_EQ(run_cfg(dh).code, exit_ok);

  RunConfig wrong_d = config(Command::oracle_diff, "bounded3", 5);
  wrong_d.d = 4;
  EXPECT_EQ(run_cfg(wrong_d).code, exit_config);

  RunConfig no_oracle = config(Command::oracle_diff, "constant", 5);
  no_oracle.d = 3;
  EXPECT_EQ(run_cfg(no_oracle).code, exit_config);

  RunConfig perturbed = config(Command::oracle_diff, "bounded3", 5);
  perturbed.perturb = "3,1,1/2";
  const Outcome o = run_cfg(perturbed);
  EXPECT_EQ(o.code, exit_verification);
  EXPECT_NE(o.err.find("mismatch"), std::string::npos);
}

TEST(OracleDiffCommand, ModelFileAgainstWrongFamily) {
  const auto path = temp_path("needweight_oracle.json");
  std::ofstream(path) << R"({"d": 3, "root": {"u0": "0", "children": ["1", "-1/2", "-1/2"]}, "K": 4})";
  RunConfig cfg = config(Command::oracle_diff, "bounded3", 3);
  cfg.model_file = path.string();
  EXPECT_EQ(run_cfg(cfg).code, exit_config);
  cfg.model = "needweight3";
  EXPECT_EQ(run_cfg(cfg).code, exit_ok);
  std::filesystem::remove(path);
}

TEST(PlotData, BoundedWeissSeries) {
  RunConfig cfg = config(Command::plot_data, "bounded3", 10);
  cfg.functionals = {Selection::W};
  const Outcome o = run_cfg(cfg);
  ASSERT_EQ(o.code, exit_ok);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# W_d");
  double prev = -1e300;
  int count = 0;
  while (std::getline(in, line)) {
    const double v = std::stod(line.substr(line.find('\t') + 1));
    EXPECT_GT(v, prev);
    prev = v;
    ++count;
  }
  EXPECT_EQ(count, 10);
}

TEST(PlotData, NeedweightEnergyApproachesThree) {
  RunConfig cfg = config(Command::plot_data, "needweight3", 30);
  cfg.functionals = {Selection::energy};
  const std::string out = run_cfg(cfg).out;
  const std::string last = out.substr(out.rfind('\n', out.size() - 2) + 1);
  EXPECT_EQ(last, "30\t2.99999999720603\n");
}

TEST(PlotData, LinearWeissApproachesSlopeSquared) {
  RunConfig cfg = config(Command::plot_data, "linear2:1,2", 40);
  cfg.functionals = {Selection::W};
  const std::string out = run_cfg(cfg).out;
  EXPECT_NE(out.find("2\t0\n"), std::string::npos);
  EXPECT_NE(out.find("40\t0.9975\n"), std::string::npos);
}

TEST(PlotData, RejectsAggregates) {
  RunConfig cfg = config(Command::plot_data, "bounded3", 3);
  cfg.functionals = {Selection::aggregates};
  EXPECT_EQ(run_cfg(cfg).code, exit_config);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("sweep --model bounded3 --kmax 4"), 0);
  EXPECT_EQ(run_binary("verify --model needweight3 --kmax 10 --perturb 1,0,1"), 2);
  EXPECT_EQ(run_binary("oracle-diff --model bounded3 --d 4 --kmax 5"), 1);
  EXPECT_EQ(run_binary("sweep --model bounded3 --functional G,Z"), 1);
  EXPECT_EQ(run_binary("sweep --model bounded3 --mode fuzzy"), 1);
  EXPECT_EQ(run_binary("sweep --bogus-flag"), 1);
  EXPECT_EQ(run_binary("--help"), 0);
}

TEST(Binary, OutputsAreByteIdentical) {
  for (const std::string format : {"csv", "json", "tsv"}) {
    const auto a = temp_path("det_a." + format);
    const auto b = temp_path("det_b." + format);
    const std::string args =
        "sweep --model random --d 5 --seed 1234 --kmax 6 --functional G,W,N,F,energy,aggregates --format " + format;
    ASSERT_EQ(run_binary(args + " --out " + a.string()), 0);
    ASSERT_EQ(run_binary(args + " --out " + b.string()), 0);
    const std::string first = read_file(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, read_file(b)) << format;
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
}
