#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "skewform/error.hpp"
#include "skewform/models.hpp"

using namespace skewform;

namespace {

void expect_matrix(const SmallMatrix& m, const std::vector<std::vector<double>>& expected,
                   double tol = 0.0) {
  ASSERT_EQ(m.n, static_cast<int>(expected.size()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) EXPECT_NEAR(m(i, j), expected[i][j], tol) << i << "," << j;
}

TEST(Models, BurgersCoefficients) {
  const ModelSpec m = make_model(ModelKind::burgers1d);
  EXPECT_EQ(m.n_comp(), 1);
  const double u[] = {1.5};
  const PointCoefficients pc = m.coefficients(u, {0.2, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(pc.A[0](0, 0), 0.5);
  EXPECT_EQ(pc.C(0, 0), 0.0);
}

TEST(Models, SweAtRestGeopotentialOne) {
  ModelParams p;
  p.alpha = 1.0;
  const ModelSpec m = make_model(ModelKind::swe2d, p);
  const double v[] = {1.0, 0.0, 0.0};
  const PointCoefficients pc = m.coefficients(v, {0.0, 0.0, 0.0});
  expect_matrix(pc.A[0], {{0, -2, 0}, {2, 0, 0}, {0, 0, 0}});
  expect_matrix(pc.C, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
}

TEST(Models, Euler2dMatrix) {
  const ModelSpec m = make_model(ModelKind::euler2d);
  const double v[] = {1.0, 1.0, 1.0};
  const PointCoefficients pc = m.coefficients(v, {0.0, 0.0, 0.0});
  expect_matrix(pc.A[0], {{0.5, 0, 0.5}, {0, 0.5, 0}, {0.5, 0, 0}});
  expect_matrix(m.norm_matrix({0, 0, 0}), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
}

TEST(Models, CylindricalZeroOrderTerm) {
  const ModelSpec m = make_model(ModelKind::euler3d_cyl);
  const double v[] = {0.3, 0.7, 0.2, 1.1};
  const PointCoefficients pc = m.coefficients(v, {2.0, 0.4, 0.1});
  expect_matrix(pc.C, {{0, -0.7, 0, -0.5}, {0.7, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0}});
}

TEST(Models, CoriolisIsSkewAndVanishesWhenOff) {
  ModelParams p;
  p.coriolis_f0 = 0.8;
  p.coriolis_beta = 0.3;
  const ModelSpec rot = make_model(ModelKind::swe2d, p);
  const double v[] = {1.3, 0.2, -0.4};
  const SmallMatrix c = rot.coefficients(v, {0.1, 0.5, 0.0}).C;
  const double f = 0.8 + 0.3 * 0.5;
  EXPECT_DOUBLE_EQ(rot.coriolis({0.1, 0.5, 0.0}), f);
  expect_matrix(c, {{0, 0, 0}, {0, 0, -f}, {0, f, 0}}, 1e-15);
  const ModelSpec still = make_model(ModelKind::swe2d);
  EXPECT_EQ(still.coefficients(v, {0.1, 0.5, 0.0}).C.max_abs(), 0.0);
}

TEST(Models, ZeroOrderTermSkewForRandomStates) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ModelParams p;
  p.coriolis_f0 = 1.0;
  for (ModelKind k : {ModelKind::burgers1d, ModelKind::euler2d, ModelKind::euler3d_cyl,
                      ModelKind::swe2d}) {
    const ModelSpec m = make_model(k, p);
    for (int t = 0; t < 20; ++t) {
      double v[4];
      for (double& x : v) x = dist(rng);
      if (k == ModelKind::swe2d) v[0] = 1.0 + std::abs(v[0]);
      const Position pos{1.0 + 0.5 * std::abs(dist(rng)), dist(rng), dist(rng)};
      const SmallMatrix c = m.coefficients(std::span<const double>(v, m.n_comp()), pos).C;
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j) EXPECT_EQ(c(i, j), -c(j, i));
    }
  }
}

TEST(Models, NormMatrices) {
  for (ModelKind k : {ModelKind::burgers1d, ModelKind::swe2d}) {
    const SmallMatrix p = make_model(k).norm_matrix({1.0, 0.0, 0.0});
    for (int i = 0; i < p.n; ++i) EXPECT_GT(p(i, i), 0.0);
    EXPECT_TRUE(make_model(k).norm_invertible());
  }
  EXPECT_FALSE(make_model(ModelKind::euler2d).norm_invertible());
  const SmallMatrix pc = make_model(ModelKind::euler3d_cyl).norm_matrix({2.0, 0.0, 0.0});
  expect_matrix(pc, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 0}});
}

// For every smooth U(x), (A(U) U)_x + A(U)^T U_x equals the advective form
// script-A(U) U_x. With U = V + x W at x = 0 the left side is
// (dA/dU [W]) V + (A + A^T) W, taken here by a central difference in U.
TEST(Models, SweSplitReproducesAdvectiveForm) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double alpha : {0.0, 0.5, 1.0, -1.5}) {
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
      ModelParams p;
      p.alpha = alpha;
      p.beta = beta;
      const ModelSpec m = make_model(ModelKind::swe2d, p);
      for (int t = 0; t < 5; ++t) {
        const double v[3] = {1.0 + 0.5 * std::abs(dist(rng)), dist(rng), dist(rng)};
        const double w[3] = {dist(rng), dist(rng), dist(rng)};
        const double eps = 1e-6;
        double vp[3], vm[3];
        for (int i = 0; i < 3; ++i) {
          vp[i] = v[i] + eps * w[i];
          vm[i] = v[i] - eps * w[i];
        }
        const auto pc = m.coefficients(v, {});
        const auto pp = m.coefficients(vp, {});
        const auto pm = m.coefficients(vm, {});
        const auto adv = advective_form<double>(ModelKind::swe2d, v);
        for (int axis = 0; axis < 2; ++axis) {
          for (int r = 0; r < 3; ++r) {
            double lhs = 0.0, rhs = 0.0;
            for (int s = 0; s < 3; ++s) {
              const double dA = (pp.A[axis](r, s) - pm.A[axis](r, s)) / (2.0 * eps);
              lhs += dA * v[s] + (pc.A[axis](r, s) + pc.A[axis](s, r)) * w[s];
              rhs += adv.a[axis][r][s] * w[s];
            }
            EXPECT_NEAR(lhs, rhs, 1e-8) << "alpha " << alpha << " beta " << beta;
          }
        }
      }
    }
  }
}

TEST(Models, BurgersSplitReproducesAdvectiveForm) {
  // (u^2/3)_x + (u/3) u_x = u u_x.
  const double u[] = {1.7};
  const auto adv = advective_form<double>(ModelKind::burgers1d, u);
  const double a = make_model(ModelKind::burgers1d).coefficients(u, {}).A[0](0, 0);
  EXPECT_DOUBLE_EQ(2.0 * a + a, adv.a[0][0][0]);
}

TEST(Models, SweTransform) {
  StateField prim(3, 1);
  prim(0, 0) = 4.0;
  prim(1, 0) = 1.0;
  prim(2, 0) = -2.0;
  const StateField u = swe_transform(prim);
  EXPECT_EQ(u(0, 0), 4.0);
  EXPECT_EQ(u(1, 0), 2.0);
  EXPECT_EQ(u(2, 0), -4.0);
  // Pointwise U1^2 + U2^2 + U3^2 = phi^2 + phi (u^2 + v^2).
  EXPECT_DOUBLE_EQ(16.0 + 4.0 + 16.0, 16.0 + 4.0 * (1.0 + 4.0));
}

TEST(Models, SweTransformRoundTrip) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> phi(0.1, 5.0), vel(-3.0, 3.0);
  StateField prim(3, 200);
  for (std::size_t i = 0; i < 200; ++i) {
    prim(0, i) = phi(rng);
    prim(1, i) = vel(rng);
    prim(2, i) = vel(rng);
  }
  const StateField back = swe_inverse(swe_transform(prim));
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < 200; ++i)
      EXPECT_LE(std::abs(back(c, i) - prim(c, i)), 1e-14 * (1.0 + std::abs(prim(c, i))));
  StateField bad = prim;
  bad(0, 17) = 0.0;
  EXPECT_THROW(swe_transform(bad), AdmissibilityError);
}

TEST(Models, CoefficientSplit) {
  const ModelSpec m = make_model(ModelKind::burgers1d);
  const Grid g({Axis{5, 0.0, 1.0}});
  const StateField mean(1, 5, 2.0);
  const StateField pert(1, 5, 0.1);
  const CoefficientSplit s = coeff_split(m, g, mean, pert);
  // Formed as A(2.1) - A(2); exact up to the rounding of the total.
  EXPECT_NEAR(s.pert.A[0].at(0, 0, 3), 0.1 / 3.0, 4.0 * std::numeric_limits<double>::epsilon() * 2.1 / 3.0);
  const CoefficientSplit zero = coeff_split(m, g, mean, StateField(1, 5));
  EXPECT_EQ(zero.pert.A[0].at(0, 0, 2), 0.0);
}

TEST(Models, CoefficientSplitAddsUp) {
  ModelParams p;
  p.alpha = 0.3;
  p.coriolis_f0 = 0.7;
  const ModelSpec m = make_model(ModelKind::swe2d, p);
  const Grid g({Axis{6, 0.0, 1.0}, Axis{5, 0.0, 1.0}});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);
  StateField mean(3, g.nodes()), pert(3, g.nodes());
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    mean(0, i) = 1.0 + dist(rng);
    pert(0, i) = dist(rng);
    for (std::size_t c = 1; c < 3; ++c) {
      mean(c, i) = dist(rng);
      pert(c, i) = dist(rng);
    }
  }
  const CoefficientSplit s = coeff_split(m, g, mean, pert);
  const CoefficientField full = coefficient_field(m, g, linear_combination(1.0, mean, 1.0, pert));
  for (int a = 0; a < 2; ++a)
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.nodes(); ++i)
          EXPECT_EQ(s.pert.A[a].at(r, c, i), full.A[a].at(r, c, i) - s.mean.A[a].at(r, c, i));
}

TEST(Models, Validation) {
  ModelParams bad;
  bad.g = 0.0;
  EXPECT_THROW(make_model(ModelKind::swe2d, bad), Error);
  bad.g = 9.81;
  bad.alpha = NAN;
  EXPECT_THROW(make_model(ModelKind::swe2d, bad), Error);
  EXPECT_THROW(parse_model_kind("euler4d"), Error);

  const ModelSpec cyl = make_model(ModelKind::euler3d_cyl);
  EXPECT_THROW(cyl.validate_grid(Grid({Axis{9, 0.0, 1.0}, Axis{9, 0.0, 6.0, true}, Axis{9, 0, 1}})),
               Error);
  EXPECT_THROW(cyl.validate_grid(Grid({Axis{9, 0.5, 1.0}})), ShapeError);

  const ModelSpec swe = make_model(ModelKind::swe2d);
  const double neg[] = {-0.1, 0.0, 0.0};
  EXPECT_FALSE(swe.admissible(neg));
  EXPECT_THROW(swe.check_admissible(neg), AdmissibilityError);
}

}  // namespace
