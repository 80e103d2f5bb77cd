#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewform/cli.hpp"
#include "skewform/error.hpp"

using namespace skewform;
namespace fs = std::filesystem;

namespace {

const std::string kScenarios = SKEWFORM_SCENARIO_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("skewform_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CommandIo io() { return CommandIo{out_, err_, dir_.string()}; }

  static std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> row(1);
      bool quoted = false;
      for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        else if (ch == ',' && !quoted) row.emplace_back();
        else row.back() += ch;
      }
      rows.push_back(row);
    }
    return rows;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, VerifyEnergySingleTrialHasZeroRow) {
  VerifyOptions opt;
  opt.trials = 1;
  EXPECT_EQ(cmd_verify({"energy"}, opt, io()), exit_pass);
  const auto rows = read_csv(dir_ / "verify_report.csv");
  ASSERT_GT(rows.size(), 1u);
  const auto& header = rows.front();
  const auto col = std::find(header.begin(), header.end(), "max_residual") - header.begin();
  ASSERT_LT(static_cast<std::size_t>(col), header.size());
  bool zero_row = false;
  for (std::size_t r = 1; r < rows.size(); ++r) zero_row |= std::stod(rows[r][col]) == 0.0;
  EXPECT_TRUE(zero_row);
  EXPECT_NE(out_.str().find("1/1 suites passed"), std::string::npos);
}

TEST_F(CliTest, VerifyUnknownSuite) {
  EXPECT_EQ(cmd_verify({"everything"}, VerifyOptions{}, io()), exit_usage);
  EXPECT_NE(err_.str().find("unknown suite"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "verify_report.csv"));
}

TEST_F(CliTest, RunWritesExactColumnsAndConserves) {
  EXPECT_EQ(cmd_run(kScenarios + "/burgers_periodic.cfg", io()), exit_pass);
  const auto rows = read_csv(dir_ / "burgers_periodic_energy.csv");
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows.front(),
            (std::vector<std::string>{"t", "E", "rate", "boundary_flux", "volume_residual"}));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    EXPECT_LE(std::abs(std::stod(rows[r][4])), 1e-12 * (1.0 + std::stod(rows[r][1])));
  }
  EXPECT_TRUE(fs::exists(dir_ / "burgers_periodic_state.txt"));
}

TEST_F(CliTest, RunFaceColumnsForOpenBoundaries) {
  EXPECT_EQ(cmd_run(kScenarios + "/swe_inflow_twocond.cfg", io()), exit_pass);
  const auto rows = read_csv(dir_ / "swe_inflow_energy.csv");
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"t", "E", "rate", "boundary_flux",
                                                    "volume_residual", "flux_x_low",
                                                    "flux_x_high"}));
  for (std::size_t r = 1; r < rows.size(); ++r) EXPECT_EQ(rows[r].size(), 7u);
}

TEST_F(CliTest, StateFileRoundTrip) {
  EXPECT_EQ(cmd_run(kScenarios + "/swe_coriolis_periodic.cfg", io()), exit_pass);
  const LoadedScenario ls = load_scenario(ConfigDocument::load(kScenarios + "/swe_coriolis_periodic.cfg"));
  std::ifstream in(dir_ / "swe_coriolis_state.txt");
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# model = swe2d");
  in.seekg(0);
  const StateField u = read_state(in, ls.scenario.disc);
  EXPECT_EQ(u.nodes(), 24u * 24u);
  EXPECT_TRUE(u.all_finite());
}

TEST_F(CliTest, StandardVersusNewGrowthWitness) {
  EXPECT_EQ(cmd_run(kScenarios + "/burgers_standard_vs_new/standard.cfg", io()), exit_pass);
  EXPECT_EQ(cmd_run(kScenarios + "/burgers_standard_vs_new/new.cfg", io()), exit_pass);
  const auto departure = [&](const std::string& name) {
    const auto rows = read_csv(dir_ / name);
    return std::abs(std::stod(rows.back()[1]) / std::stod(rows[1][1]) - 1.0);
  };
  const double standard = departure("standard_energy.csv");
  const double fresh = departure("new_energy.csv");
  EXPECT_GT(standard, 10.0 * fresh);
  EXPECT_GT(standard, 0.1);
}

TEST_F(CliTest, MissingConfigLeavesNoOutput) {
  EXPECT_THROW(cmd_run((dir_ / "absent.cfg").string(), io()), ConfigError);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, IdentityScenarios) {
  for (const char* name : {"cyl_euler_identity.cfg", "euler2d_identity.cfg"}) {
    EXPECT_EQ(cmd_run(kScenarios + "/" + name, io()), exit_pass) << name;
  }
  const auto rows = read_csv(dir_ / "cyl_euler_identity.csv");
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows.front().back(), "flux_z_high");
}

TEST_F(CliTest, AnalyzeBoundaryTable) {
  AnalyzeRequest req;
  req.state = {4.0, -2.0, 0.0};
  req.normal = {1.0, 0.0};
  req.perturbation = {1.0, 0.0, 0.5};
  EXPECT_EQ(cmd_analyze_boundary(req, io()), exit_pass);
  const auto rows = read_csv(dir_ / "boundary_analysis.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][0], "nonlinear");
  EXPECT_EQ(rows[1][6], "3");
  EXPECT_EQ(rows[3][0], "rewritten");
  EXPECT_EQ(rows[3][6], "2");
  req.state = {4.0, 2.0};
  EXPECT_THROW(cmd_analyze_boundary(req, io()), ConfigError);
}

TEST_F(CliTest, AnalyzeBoundaryFromConfig) {
  const fs::path cfg = dir_ / "analysis.cfg";
  std::ofstream(cfg) << "[model]\nkind = swe2d\n[analysis]\nstate = 4, 2, -1\nnormal = 1, 0\n"
                        "formulation = nonlinear\n";
  AnalyzeRequest req;
  req.config_path = cfg.string();
  EXPECT_EQ(cmd_analyze_boundary(req, io()), exit_pass);
  const auto rows = read_csv(dir_ / "boundary_analysis.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][6], "0");
}

ConfigDocument burgers_doc(const std::string& order, const std::string& initial) {
  return ConfigDocument::parse("[model]\nkind = burgers1d\n[grid]\norder = " + order +
                                   "\nn = 32\nperiodic = x\n[time]\ndt = 0.01\nt_end = 0.5\ncfl = 0.5\n"
                                   "[initial]\nu = " + initial + "\n",
                               "conv");
}

TEST(Convergence, SecondOrderSelfConvergence) {
  const auto rows = self_convergence(burgers_doc("(2,1)", "0.5 + 0.2 * sin(2 * pi * x)"), 4);
  ASSERT_EQ(rows.size(), 3u);
  ASSERT_TRUE(rows.back().order.has_value());
  EXPECT_GE(*rows.back().order, 1.8);
  EXPECT_LE(*rows.back().order, 2.2);
}

TEST(Convergence, FourthOrderSelfConvergence) {
  const auto rows = self_convergence(burgers_doc("(4,2)", "0.5 + 0.2 * sin(2 * pi * x)"), 3);
  ASSERT_TRUE(rows.back().order.has_value());
  EXPECT_GE(*rows.back().order, 2.8);
  EXPECT_LE(*rows.back().order, 4.2);
}

TEST(Convergence, ConstantDataIsExact) {
  const auto rows = self_convergence(burgers_doc("(2,1)", "0.75"), 3);
  for (const LevelError& r : rows) {
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.error, 0.0);
  }
}

TEST(Convergence, NeedsThreeLevels) {
  EXPECT_THROW(self_convergence(burgers_doc("(2,1)", "1"), 2), ConfigError);
}

TEST(Convergence, FillOrders) {
  std::vector<LevelError> rows = {{10, 0.1, 4e-2, {}, false}, {20, 0.05, 1e-2, {}, false},
                                  {40, 0.025, 0.0, {}, false}};
  fill_orders(rows);
  EXPECT_FALSE(rows[0].order.has_value());
  EXPECT_NEAR(*rows[1].order, 2.0, 1e-14);
  EXPECT_TRUE(rows[2].exact);
  EXPECT_FALSE(rows[2].order.has_value());
}

}  // namespace
