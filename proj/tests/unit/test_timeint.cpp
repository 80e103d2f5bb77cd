#include <gtest/gtest.h>

#include <cmath>

#include "skewform/error.hpp"
#include "skewform/timeint.hpp"
#include "skewform/verify.hpp"

using namespace skewform;

namespace {

Discretization periodic_burgers(std::size_t n, SbpOrder order = SbpOrder::second) {
  return Discretization(make_model(ModelKind::burgers1d), Grid({Axis{n, 0.0, 1.0, true}}), order);
}

StateField sine(const Discretization& d, double amp) {
  StateField u = d.zero_state();
  for (std::size_t i = 0; i < d.nodes(); ++i)
    u(0, i) = amp * std::sin(2.0 * M_PI * d.grid().position(i)[0]);
  return u;
}

Scenario burgers_scenario(double dt, double t_end) {
  const Discretization d = periodic_burgers(64);
  Scenario s{d, MarchMode::nonlinear, sine(d, 0.1), {}, {}, SatConfig::natural(d.grid()), {},
             dt, t_end};
  s.cfl = 0.5;
  return s;
}

TEST(Rk4, ZeroTendencyLeavesStateUnchanged) {
  const StateField u(2, 5, 1.25);
  const Tendency zero = [](double, const StateField& x) { return StateField(x.n_comp(), x.nodes()); };
  EXPECT_EQ(rk4_step(zero, u, 0.0, 0.3), u);
}

TEST(Rk4, ExponentialDecayOneStep) {
  // 1 - dt + dt^2/2 - dt^3/6 + dt^4/24 at dt = 0.1.
  const StateField u(1, 1, 1.0);
  const Tendency decay = [](double, const StateField& x) { return linear_combination(-1.0, x, 0.0, x); };
  const StateField next = rk4_step(decay, u, 0.0, 0.1);
  EXPECT_NEAR(next(0, 0), 0.9048375, 1e-15);
  EXPECT_NEAR(next(0, 0), std::exp(-0.1), 1e-7);
}

TEST(March, StepCountAndReports) {
  Scenario s = burgers_scenario(0.03, 0.1);
  s.stride = 2;
  const MarchResult r = march(s);
  EXPECT_EQ(r.steps, 4u);
  EXPECT_DOUBLE_EQ(r.dt, 0.025);
  ASSERT_EQ(r.reports.size(), 3u);  // t = 0, after step 2 and after the last step
  EXPECT_EQ(r.reports.front().t, 0.0);
  EXPECT_DOUBLE_EQ(r.reports.back().t, 0.1);
}

TEST(March, ConservesSemiDiscreteEnergy) {
  const MarchResult r = march(burgers_scenario(0.02, 1.0));
  for (const EnergyReport& e : r.reports) EXPECT_LE(std::abs(e.volume_residual), 1e-12 * e.scale);
}

TEST(March, FourthOrderInTime) {
  // Error against a reference with a 16 times smaller step.
  const StateField ref = march(burgers_scenario(0.02 / 16.0, 1.0)).final_state;
  const auto error = [&](double dt) {
    return max_abs(linear_combination(1.0, march(burgers_scenario(dt, 1.0)).final_state, -1.0, ref));
  };
  const double ratio = error(0.04) / error(0.02);
  EXPECT_GT(ratio, 13.0);
  EXPECT_LT(ratio, 19.0);
}

TEST(March, CoupledWithZeroPerturbationFollowsNonlinear) {
  const Discretization d = periodic_burgers(32, SbpOrder::fourth);
  const SatConfig sat = SatConfig::natural(d.grid());
  Scenario nl{d, MarchMode::nonlinear, sine(d, 0.3), {}, {}, sat, {}, 0.01, 0.2};
  Scenario cp{d, MarchMode::coupled, d.zero_state(), sine(d, 0.3), {}, sat, sat, 0.01, 0.2};
  const MarchResult a = march(nl);
  const MarchResult b = march(cp);
  EXPECT_EQ(a.final_state, b.final_mean);
  EXPECT_EQ(max_abs(b.final_state), 0.0);
}

TEST(March, DualRetracesPrimalInReversedTime) {
  // With V = Phi the dual scheme is the primal scheme run backwards: marching
  // the dual from U(T) over tau in [0, T] returns to U(0).
  const Discretization d = periodic_burgers(32);
  const SatConfig sat = SatConfig::natural(d.grid());
  const StateField u0 = sine(d, 0.2);
  const auto retrace_error = [&](double dt) {
    const Scenario p{d, MarchMode::nonlinear, u0, {}, {}, sat, {}, dt, 0.3};
    const MarchResult fwd = march(p);
    Scenario q = p;
    q.mode = MarchMode::dual;
    q.initial = fwd.final_state;
    const MarchResult back = march(q);
    for (const EnergyReport& e : back.reports)
      EXPECT_LE(std::abs(e.volume_residual), 1e-12 * e.scale);
    return max_abs(linear_combination(1.0, back.final_state, -1.0, u0));
  };
  const double e1 = retrace_error(0.02);
  const double e2 = retrace_error(0.01);
  EXPECT_LT(e1, 1e-6);
  EXPECT_GT(e1 / e2, 10.0);
}

TEST(March, CflViolationThrows) {
  EXPECT_THROW(march(burgers_scenario(0.5, 1.0)), MarchError);
}

TEST(March, CflStepFromInitialData) {
  Scenario s = burgers_scenario(0.0, 0.5);
  const MarchResult r = march(s);
  const double expected = cfl_time_step(s.disc, s.initial, s.cfl);
  EXPECT_LE(r.dt, expected);
  EXPECT_GT(r.dt, 0.0);
}

TEST(March, SingularNormCannotBeMarched) {
  const Discretization d(make_model(ModelKind::euler2d), default_grid(ModelKind::euler2d),
                         SbpOrder::second);
  Scenario s{d, MarchMode::nonlinear, d.zero_state(), {}, {}, SatConfig{}, {}, 0.01, 0.1};
  EXPECT_THROW(march(s), Error);
}

TEST(March, ModeText) {
  for (MarchMode m : {MarchMode::nonlinear, MarchMode::frozen, MarchMode::coupled,
                      MarchMode::standard, MarchMode::dual}) {
    EXPECT_EQ(parse_march_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_march_mode("implicit"), Error);
}

}  // namespace
