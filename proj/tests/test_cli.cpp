#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mvhp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + MVHP_CLI_PATH + "\" " + args + " >/dev/null 2>\"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string simulate_panel(const std::string& name, int n = 300, int seed = 5) const {
    write("sim.json", R"({"N": )" + std::to_string(n) + R"(, "seed": )" + std::to_string(seed) + R"(,
      "sigma_eps": [[1.0, 0.3, 0.1], [0.3, 2.0, 0.2], [0.1, 0.2, 0.5]],
      "sigma_xi": [[0.01, 0.002, 0.0], [0.002, 0.02, 0.001], [0.0, 0.001, 0.005]]})");
    EXPECT_EQ(run("simulate --config " + path("sim.json") + " --out " + path(name)), 0);
    return path(name);
  }

  fs::path dir_;
};

const std::string kData = MVHP_TEST_DATA_DIR;

}  // namespace

TEST_F(Cli, EstimateDetrendEndToEnd) {
  ASSERT_EQ(run("estimate --input " + kData + "/panel_479.csv --freq monthly --out " + path("report.json")), 0);
  const nlohmann::json r = nlohmann::json::parse(read(path("report.json")));
  for (const char* key : {"sigma_eps", "sigma_xi", "alpha", "P", "delta", "theta1_mat", "theta2_mat", "omega",
                          "per_aggregate", "diagnostics"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_GE(r["delta"][1].get<double>(), 1.0 / 14400.0 * (1 - 1e-9));

  ASSERT_EQ(run("detrend --input " + kData + "/panel_479.csv --report " + path("report.json") + " --out-dir " +
                path("out") + " --emit-plots"),
            0);
  for (const char* f : {"trend.csv", "cycle.csv", "ITA.svg", "FRA.svg"}) EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  EXPECT_FALSE(fs::exists(dir_ / "out" / "trend_fixed.csv"));
  EXPECT_EQ(read(path("out/trend.csv")).substr(0, 13), "date,ITA,FRA\n");

  ASSERT_EQ(run("detrend --input " + kData + "/panel_479.csv --report " + path("report.json") + " --out-dir " +
                path("out2") + " --fixed-lambda 1600"),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "out2" / "trend_fixed.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out2" / "cycle_fixed.csv"));
}

TEST_F(Cli, OutputsAreByteIdentical) {
  const std::string panel = simulate_panel("y.csv");
  ASSERT_EQ(run("estimate --input " + panel + " --out " + path("a.json")), 0);
  ASSERT_EQ(run("--threads 1 estimate --input " + panel + " --out " + path("b.json")), 0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
  ASSERT_EQ(run("detrend --input " + panel + " --report " + path("a.json") + " --out-dir " + path("d1")), 0);
  ASSERT_EQ(run("detrend --input " + panel + " --report " + path("b.json") + " --out-dir " + path("d2")), 0);
  EXPECT_EQ(read(path("d1/trend.csv")), read(path("d2/trend.csv")));
  const std::string again = simulate_panel("y2.csv");
  EXPECT_EQ(read(panel), read(again));
}

TEST_F(Cli, TrendPlusCycleIsInput) {
  const std::string panel = simulate_panel("y.csv", 200, 9);
  ASSERT_EQ(run("estimate --input " + panel + " --freq quarterly --out " + path("r.json")), 0);
  ASSERT_EQ(run("detrend --input " + panel + " --report " + path("r.json") + " --out-dir " + path("o")), 0);
  std::istringstream y(read(panel)), t(read(path("o/trend.csv"))), c(read(path("o/cycle.csv")));
  std::string ly, lt, lc;
  std::getline(y, ly);
  std::getline(t, lt);
  std::getline(c, lc);
  EXPECT_EQ(ly, lt);
  int rows = 0;
  while (std::getline(y, ly) && std::getline(t, lt) && std::getline(c, lc)) {
    std::istringstream sy(ly), st(lt), sc(lc);
    std::string a, b, d;
    while (std::getline(sy, a, ',') && std::getline(st, b, ',') && std::getline(sc, d, ',')) {
      EXPECT_NEAR(std::stod(b) + std::stod(d), std::stod(a), 1e-10);
    }
    ++rows;
  }
  EXPECT_EQ(rows, 200);
}

TEST_F(Cli, LinearPanelHasZeroCycle) {
  std::string csv = "a,b\n";
  for (int t = 0; t < 60; ++t) csv += std::to_string(1.0 + 0.25 * t) + "," + std::to_string(3.0 - 0.5 * t) + "\n";
  write("lin.csv", csv);
  write("report.json", R"({"P": [[1.0, 0.2], [0.1, 1.0]], "delta": [0.01, 0.001]})");
  ASSERT_EQ(run("detrend --input " + path("lin.csv") + " --report " + path("report.json") + " --out-dir " + path("o")), 0);
  std::istringstream c(read(path("o/cycle.csv")));
  std::string line;
  std::getline(c, line);
  while (std::getline(c, line)) {
    std::istringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) EXPECT_LE(std::abs(std::stod(cell)), 1e-9);
  }
}

TEST_F(Cli, ScalarPanelReport) {
  std::string csv = "x\n";
  for (int t = 0; t < 100; ++t) csv += std::to_string(std::sin(0.3 * t) + 0.01 * t * t) + "\n";
  write("x.csv", csv);
  ASSERT_EQ(run("estimate --input " + path("x.csv") + " --out " + path("r.json")), 0);
  const nlohmann::json r = nlohmann::json::parse(read(path("r.json")));
  EXPECT_EQ(r["P"].size(), 1u);
  EXPECT_EQ(r["per_aggregate"].size(), 1u);
}

TEST_F(Cli, FactorizePublishedMatrices) {
  ASSERT_EQ(run("factorize --input " + kData + "/published_covariances.json --out " + path("rf.json")), 0);
  const nlohmann::json r = nlohmann::json::parse(read(path("rf.json")));
  ASSERT_EQ(r["delta"].size(), 8u);
  EXPECT_NEAR(r["delta"][0].get<double>(), 0.3127, 5e-3);
  EXPECT_LE(r["gamma_residuals"]["gamma0"].get<double>(), 1e-9);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("estimate --input " + path("missing.csv") + " --out " + path("r.json")), 1);
  EXPECT_NE(read(path("stderr.txt")).find("mvhp:"), std::string::npos);
  write("short.csv", "a,b\n1,2\n3,4\n5,6\n");
  EXPECT_EQ(run("estimate --input " + path("short.csv") + " --out " + path("r.json")), 1);
  EXPECT_NE(read(path("stderr.txt")).find("TooShort"), std::string::npos);
  write("bad.csv", "a,b\n1,2\n3,x\n");
  EXPECT_EQ(run("estimate --input " + path("bad.csv") + " --out " + path("r.json")), 1);
  write("asym.json", R"({"sigma_eps": [[1, 0.5], [0, 1]], "sigma_xi": [[1, 0], [0, 1]]})");
  EXPECT_EQ(run("factorize --input " + path("asym.json") + " --out " + path("o.json")), 1);
  write("npd.json", R"({"sigma_eps": [[1, 2], [2, 1]], "sigma_xi": [[1, 0], [0, 1]]})");
  EXPECT_EQ(run("factorize --input " + path("npd.json") + " --out " + path("o.json")), 2);
  EXPECT_EQ(run("estimate --input " + kData + "/panel_479.csv --out " + path("nodir/r.json")), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("estimate --input " + kData + "/panel_479.csv --freq custom --out " + path("r.json")), 1);
}
