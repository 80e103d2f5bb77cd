#include <gtest/gtest.h>

#include <cmath>

#include "skewform/config.hpp"
#include "skewform/error.hpp"
#include "skewform/expression.hpp"

using namespace skewform;

namespace {

double eval(const std::string& text, Position p = {0.0, 0.0, 0.0}) {
  return Expression::parse(text)(p);
}

TEST(Expression, Arithmetic) {
  EXPECT_EQ(eval("1 + 2 * 3"), 7.0);
  EXPECT_EQ(eval("(1 + 2) * 3"), 9.0);
  EXPECT_EQ(eval("2 ^ 3 ^ 2"), 512.0);
  EXPECT_EQ(eval("-2 ^ 2"), -4.0);
  EXPECT_EQ(eval("7 / 2 - 1"), 2.5);
  EXPECT_EQ(eval("1e-3 * 2"), 2e-3);
  EXPECT_DOUBLE_EQ(eval("2 * pi"), 2.0 * M_PI);
}

TEST(Expression, VariablesAndFunctions) {
  const Position p{0.5, 2.0, -1.0};
  EXPECT_DOUBLE_EQ(eval("x + y * z", p), 0.5 - 2.0);
  EXPECT_DOUBLE_EQ(eval("r * theta", p), 1.0);
  EXPECT_DOUBLE_EQ(eval("sin(pi * x)", p), 1.0);
  EXPECT_DOUBLE_EQ(eval("sqrt(abs(z)) + exp(0) + log(1) + tanh(0) + cos(0) + tan(0)", p), 3.0);
}

TEST(Expression, ErrorsNameTheColumn) {
  for (const char* bad : {"1 +", "sin(x", "foo(1)", "2 ** 3", "q", ")", ""}) {
    try {
      Expression::parse(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
    }
  }
}

const char* kBurgers = R"(
# comment
[model]
kind = burgers1d   ; trailing comment

[grid]
order = (4,2)
n = 16
periodic = x

[time]
mode = nonlinear
dt = 0.01
t_end = 0.05

[initial]
u = 0.1 * sin(2 * pi * x)
)";

TEST(Config, LoadsScenario) {
  const LoadedScenario ls = load_scenario(ConfigDocument::parse(kBurgers, "test"));
  const Scenario& s = ls.scenario;
  EXPECT_EQ(s.disc.model.kind(), ModelKind::burgers1d);
  EXPECT_EQ(s.disc.ops.order(), SbpOrder::fourth);
  EXPECT_EQ(s.disc.grid().axis(0).n, 16u);
  EXPECT_TRUE(s.disc.grid().axis(0).periodic);
  EXPECT_EQ(s.mode, MarchMode::nonlinear);
  EXPECT_EQ(s.dt, 0.01);
  EXPECT_DOUBLE_EQ(s.initial(0, 4), 0.1 * std::sin(2.0 * M_PI * 0.25));
  EXPECT_TRUE(ls.face_names.empty());
}

TEST(Config, RefinementLevels) {
  const ConfigDocument doc = ConfigDocument::parse(kBurgers, "test");
  const LoadedScenario l2 = load_scenario(doc, 2);
  EXPECT_EQ(l2.scenario.disc.grid().axis(0).n, 64u);
  EXPECT_EQ(l2.scenario.dt, 0.0025);

  const std::string open = std::string(kBurgers).replace(std::string(kBurgers).find("periodic = x"), 12, "");
  const LoadedScenario l1 = load_scenario(ConfigDocument::parse(open, "test"), 1);
  EXPECT_EQ(l1.scenario.disc.grid().axis(0).n, 31u);
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    load_scenario(ConfigDocument::parse(text, "cfg"));
    ADD_FAILURE() << "accepted: " << fragment;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Config, RejectsMalformedInput) {
  expect_config_error("[model]\nkind = burgers1d\nspeed = 3\n", "cfg:3: unknown key 'speed'");
  expect_config_error("[physics]\n", "cfg:1: unknown section");
  expect_config_error("[model]\nkind burgers1d\n", "cfg:2: expected 'key = value'");
  expect_config_error("kind = burgers1d\n", "outside of any section");
  expect_config_error("[model]\nkind = a\nkind = b\n", "cfg:3: duplicate key");
  expect_config_error("[grid]\nn = 8\n", "[model] kind is required");
  expect_config_error(std::string(kBurgers) + "v = 1\n", "unknown key 'v' in [initial]");
  expect_config_error(std::string(kBurgers) + "[boundary]\nx_low = dissipative\n",
                      "on a periodic axis");
  std::string bad_expr = kBurgers;
  bad_expr.replace(bad_expr.find("0.1 * sin"), 9, "0.1 * sine");
  expect_config_error(bad_expr, "cfg:17:");
}

TEST(Config, EulerMustUseIdentityMode) {
  const char* text = R"(
[model]
kind = euler2d
[grid]
n = 9
[time]
mode = nonlinear
t_end = 1
[initial]
u = 0
v = 0
p = 0
)";
  expect_config_error(text, "singular norm matrix");
  std::string ok = text;
  ok.replace(ok.find("mode = nonlinear"), 16, "mode = identity");
  EXPECT_TRUE(load_scenario(ConfigDocument::parse(ok, "cfg")).identity);
}

TEST(Config, SwePrimitiveVariablesAndBoundary) {
  const char* text = R"(
[model]
kind = swe2d
alpha = 0.5
[grid]
n = 9, 8
periodic = y
[time]
dt = 0.01
t_end = 0.02
[initial]
variables = primitive
phi = 4
u = 1
v = -2
[boundary]
x_low = swe_two_condition
x_low_data = 1, 2
x_high = dissipative
x_high_sigma = 0.75
)";
  const LoadedScenario ls = load_scenario(ConfigDocument::parse(text, "cfg"));
  const Scenario& s = ls.scenario;
  EXPECT_EQ(s.initial(0, 5), 4.0);
  EXPECT_EQ(s.initial(1, 5), 2.0);
  EXPECT_EQ(s.initial(2, 5), -4.0);
  EXPECT_EQ(s.disc.model.params().alpha, 0.5);
  const FaceClosure& low = s.sat.at(Face{0, Side::low});
  EXPECT_EQ(low.kind, Closure::swe_two_condition);
  ASSERT_EQ(low.data.size(), 16u);
  EXPECT_EQ(low.data[0], 1.0);
  EXPECT_EQ(low.data[8], 2.0);
  EXPECT_EQ(s.sat.at(Face{0, Side::high}).sigma, 0.75);
  EXPECT_EQ(ls.face_names, (std::vector<std::string>{"x_low", "x_high"}));
}

TEST(Config, ModeNeedsMeanState) {
  std::string text = kBurgers;
  text.replace(text.find("mode = nonlinear"), 16, "mode = standard");
  expect_config_error(text, "needs a [mean] section");
}

TEST(Config, MissingFile) {
  EXPECT_THROW(ConfigDocument::load("/nonexistent/scenario.cfg"), ConfigError);
}

TEST(Config, SplitList) {
  EXPECT_EQ(split_list(" a, b ,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(axis_names(ModelKind::euler3d_cyl), (std::vector<std::string>{"r", "theta", "z"}));
}

}  // namespace
