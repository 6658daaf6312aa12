#include <nilequi_cli/commands.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nilequi;
using namespace nilequi::cli;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(NILEQUI_FIXTURES_DIR) + "/" + name + ".json"; }

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(NILEQUI_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json torus_doc() {
  return nlohmann::json::parse(R"({
    "name": "scratch",
    "algebra": {"preset": "abelian", "dim": 2},
    "lattice": "integer-points",
    "dilation": {"scalar": true},
    "curve": {"polynomial": [["0", "0"], ["1", "0"], ["0", "1"]]},
    "base_point": ["0", "0"],
    "grid": [10, 100],
    "characters": [[1, 1]]
  })");
}

std::string write_temp(const std::string& name, const nlohmann::json& doc) {
  const auto path = fs::temp_directory_path() / ("nilequi_test_" + name + ".json");
  std::ofstream(path) << doc.dump();
  return path.string();
}

std::string config_error_path(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST(Config, FieldPathsInErrors) {
  auto doc = torus_doc();
  doc.erase("dilation");
  EXPECT_EQ(config_error_path(doc), "dilation");

  doc = torus_doc();
  doc["curve"]["polynomial"][1][0] = 0.5;
  EXPECT_NE(config_error_path(doc).find("curve.polynomial"), std::string::npos);

  doc = torus_doc();
  doc["base_point"] = {"0", "3/2"};
  EXPECT_NE(config_error_path(doc).find("base_point"), std::string::npos);

  doc = torus_doc();
  doc["algebra"] = {{"dim", 4}, {"brackets", {{{"i", 1}, {"j", 2}, {"coeffs", {"0", "0", "1", "0"}}},
                                              {{"i", 1}, {"j", 3}, {"coeffs", {"0", "0", "0", "1"}}}}}};
  doc["curve"]["polynomial"] = {{"0", "0", "0", "0"}, {"1", "0", "0", "0"}};
  doc["base_point"] = {"0", "0", "0", "0"};
  EXPECT_NE(config_error_path(doc).find("lattice"), std::string::npos);

  EXPECT_EQ(config_error_path(torus_doc()), "<accepted>");
}

TEST(Config, RationalFields) {
  EXPECT_EQ(parse_rational_field("3/9", "x"), Rational(1, 3));
  EXPECT_EQ(parse_rational_field(4, "x"), Rational(4));
  EXPECT_THROW(parse_rational_field(0.25, "x"), ConfigError);
}

TEST(CheckCommand, StockVerdicts) {
  const std::vector<std::pair<std::string, std::string>> expected{
      {"torus_parabola", "Equidistributed"},         {"heisenberg_parabola", "Equidistributed"},
      {"cantor_t1", "WeaklyEquidistributed"},        {"cantor_curve_t2", "WeaklyEquidistributed"},
      {"product_cantor_2", "WeaklyEquidistributed"}, {"torus_line_rational", "Obstructed"},
      {"torus_point_mass", "Obstructed"},           {"subtorus_family", "Obstructed"}};
  for (const auto& [name, kind] : expected) {
    auto out = cmd_check(load_config(fixture(name)));
    EXPECT_EQ(out["verdict"].get<std::string>(), kind) << name;
    EXPECT_TRUE(out["witness_verified"].get<bool>()) << name;
  }
  auto pm = cmd_check(load_config(fixture("torus_point_mass")));
  EXPECT_EQ(pm["witness"]["character"].dump(), "[0,1]");
  EXPECT_EQ(pm["witness"]["z"].dump(), R"(["1/2"])");
  EXPECT_TRUE(cmd_check(load_config(fixture("subtorus_family")))["sufficient_only"].get<bool>());
}

TEST(SimulateCommand, StockTables) {
  auto last_abs = [](const ConvergenceTable& t) {
    double v = -1.0;
    for (const auto& r : t.rows())
      if (r.stat == "weyl_abs") v = r.value;
    return v;
  };
  EXPECT_LE(last_abs(cmd_simulate(load_config(fixture("torus_parabola")))), 0.05);

  auto line = cmd_simulate(load_config(fixture("torus_line_rational")));
  for (const auto& r : line.rows())
    if (r.stat == "weyl_abs") EXPECT_GE(r.value, 0.5);

  auto cantor = cmd_simulate(load_config(fixture("cantor_t1")));
  std::vector<double> values;
  for (const auto& r : cantor.rows())
    if (r.stat == "weyl_abs" && r.meta.find("chi=(1);") != std::string::npos) values.push_back(r.value);
  ASSERT_GE(values.size(), 6U);
  for (double v : values) EXPECT_NEAR(v, values.front(), 1e-9);
}

TEST(SimulateCommand, BudgetGuard) {
  auto doc = torus_doc();
  doc["grid"] = {1e6};
  doc["budget"] = 1000;
  EXPECT_THROW(cmd_simulate(parse_config(doc)), BudgetError);
}

TEST(CounterexampleCommand, Reports) {
  CounterexampleOptions o;
  o.m = 3;
  EXPECT_TRUE(cmd_counterexample("cantor-measure", o).ok);
  CounterexampleOptions ss;
  ss.self_similarity = true;
  auto curve = cmd_counterexample("cantor-curve", ss);
  EXPECT_TRUE(curve.ok);
  CounterexampleOptions chk;
  chk.check = true;
  auto prod = cmd_counterexample("product-cantor:2", chk);
  EXPECT_TRUE(prod.ok);
  EXPECT_EQ(prod.json["verdict"]["verdict"].get<std::string>(), "WeaklyEquidistributed");
  EXPECT_THROW(cmd_counterexample("no-such-fixture", o), ConfigError);
}

TEST(BchSelftestCommand, Passes) { EXPECT_TRUE(cmd_bch_selftest(5, 5).ok); }

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run("check --config " + fixture("torus_parabola")).code, 0);
  EXPECT_EQ(run("check --config " + fixture("torus_line_rational")).code, 0);
  auto doc = torus_doc();
  doc.erase("dilation");
  EXPECT_EQ(run("check --config " + write_temp("missing", doc)).code, 2);
  EXPECT_EQ(run("check --config /nonexistent/config.json").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("counterexample no-such-fixture").code, 2);
  auto big = torus_doc();
  big["grid"] = {1e6};
  big["budget"] = 1000;
  EXPECT_EQ(run("simulate --config " + write_temp("budget", big)).code, 3);
  EXPECT_EQ(run("bch-selftest --trials 3").code, 0);
}

TEST(Binary, MissingFieldIsNamed) {
  auto doc = torus_doc();
  doc.erase("dilation");
  const std::string cmd =
      std::string(NILEQUI_CLI_PATH) + " check --config " + write_temp("missing_named", doc) + " 2>&1 >/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string err;
  char buf[512];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) err.append(buf, n);
  pclose(p);
  EXPECT_NE(err.find("dilation"), std::string::npos) << err;
}

TEST(Binary, DeterministicOutput) {
  for (const auto& name : {"heisenberg_parabola", "torus_parabola", "cantor_t1"}) {
    auto a = run("simulate --config " + fixture(name) + " --seed 11");
    auto b = run("simulate --config " + fixture(name) + " --seed 11");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << name;
    EXPECT_EQ(a.out.rfind("param,stat,value,meta\n", 0), 0U);
  }
  auto j1 = run("check --config " + fixture("cantor_curve_t2"));
  auto j2 = run("check --config " + fixture("cantor_curve_t2"));
  EXPECT_EQ(j1.out, j2.out);
}

TEST(Binary, WritesOutFile) {
  const auto path = (fs::temp_directory_path() / "nilequi_test_out.json").string();
  fs::remove(path);
  EXPECT_EQ(run("simulate --config " + fixture("torus_parabola") + " --format json --out " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto doc = nlohmann::json::parse(ss.str());
  EXPECT_TRUE(doc.contains("rows"));
}
