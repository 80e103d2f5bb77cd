#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skewform/energy.hpp"
#include "skewform/error.hpp"
#include "skewform/verify.hpp"

using namespace skewform;

namespace {

Discretization make_disc(ModelKind kind, SbpOrder order, ModelParams p = {}) {
  return Discretization(make_model(kind, p), default_grid(kind), order);
}

double boundary_flux_oracle(const Discretization& d, const StateField& u) {
  // sum over faces of the transverse quadrature of U^T (n . A(U)) U.
  double acc = 0.0;
  for (const Face& f : d.grid().faces()) {
    const auto nodes = d.grid().face_nodes(f);
    const auto w = d.ops.face_weights(f);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::vector<double> v(d.n_comp());
      u.gather(nodes[i], v);
      std::array<double, 3> n{};
      n[f.axis] = f.sign();
      acc += w[i] * boundary_contraction(d.model, v, std::span<const double>(n.data(), d.grid().dim()),
                                         d.grid().position(nodes[i]));
    }
  }
  return acc;
}

TEST(PrimalResidual, ConstantBurgersIsStationary) {
  const Discretization d(make_model(ModelKind::burgers1d), Grid({Axis{16, 0.0, 1.0, true}}),
                         SbpOrder::fourth);
  const StateField u(1, 16, 0.75);
  const Residual r = eval_primal_residual(d, u, Nonlinear{}, SatConfig::natural(d.grid()));
  EXPECT_EQ(max_abs(r.r), 0.0);
}

class EnergyIdentity : public ::testing::TestWithParam<std::tuple<ModelKind, SbpOrder>> {};

TEST_P(EnergyIdentity, InnerProductEqualsBoundaryFlux) {
  const auto [kind, order] = GetParam();
  ModelParams p;
  p.coriolis_f0 = 0.5;
  const Discretization d = make_disc(kind, order, p);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const StateField u = random_state(d.model, d.nodes(), rng);
    const Residual r = eval_primal_residual(d, u, Nonlinear{}, SatConfig::natural(d.grid()));
    const double lhs = inner_product(d.ops, u, r.r);
    const double rhs = boundary_flux_oracle(d, u);
    const double scale = 1.0 + std::abs(rhs) + r.term_norm * std::sqrt(inner_product(d.ops, u, u));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * scale);
  }
}

TEST_P(EnergyIdentity, DualIsExactNegationOfPrimal) {
  const auto [kind, order] = GetParam();
  ModelParams p;
  p.coriolis_f0 = 0.5;
  const Discretization d = make_disc(kind, order, p);
  std::mt19937_64 rng(37);
  const StateField phi = random_state(d.model, d.nodes(), rng);
  const StateField v = random_state(d.model, d.nodes(), rng);
  const SatConfig sat = SatConfig::natural(d.grid());
  for (const CoeffMode& mode : {CoeffMode{Frozen{v}}, CoeffMode{Nonlinear{}}}) {
    const Residual rp = eval_primal_residual(d, phi, mode, sat);
    const Residual rd = eval_dual_residual(d, phi, mode, sat);
    for (std::size_t i = 0; i < rp.r.size(); ++i) EXPECT_EQ(rd.r.data()[i], -rp.r.data()[i]);
  }
}

INSTANTIATE_TEST_SUITE_P(Models, EnergyIdentity,
                         ::testing::Combine(::testing::Values(ModelKind::burgers1d,
                                                              ModelKind::euler2d,
                                                              ModelKind::euler3d_cyl,
                                                              ModelKind::swe2d),
                                            ::testing::Values(SbpOrder::second,
                                                              SbpOrder::fourth)),
                         [](const auto& info) {
                           return to_string(std::get<0>(info.param)) +
                                  (std::get<1>(info.param) == SbpOrder::second ? "_o21" : "_o42");
                         });

TEST(PrimalResidual, CoriolisTermCarriesNoEnergy) {
  ModelParams p;
  p.coriolis_f0 = 1.2;
  p.coriolis_beta = 0.4;
  const Discretization d = make_disc(ModelKind::swe2d, SbpOrder::second, p);
  std::mt19937_64 rng(3);
  const StateField u = random_state(d.model, d.nodes(), rng);
  const CoefficientField coeff = coefficient_field(d.model, d.grid(), u);
  StateField cu = d.zero_state();
  for (std::size_t i = 0; i < d.nodes(); ++i)
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t s = 0; s < 3; ++s) cu(r, i) += coeff.C.at(r, s, i) * u(s, i);
  EXPECT_LE(std::abs(inner_product(d.ops, u, cu)), 1e-13);
}

TEST(DualResidual, ConstantFieldPeriodicIsZero) {
  const Discretization d(make_model(ModelKind::euler2d),
                         Grid({Axis{8, 0.0, 1.0, true}, Axis{8, 0.0, 1.0, true}}),
                         SbpOrder::fourth);
  StateField phi(3, d.nodes(), 0.4);
  const Residual r = eval_dual_residual(d, phi, Nonlinear{}, SatConfig::natural(d.grid()));
  EXPECT_LE(max_abs(r.r), 1e-14);
}

TEST(NewLinearised, ZeroPerturbationDegenerates) {
  const Discretization d = make_disc(ModelKind::swe2d, SbpOrder::second);
  std::mt19937_64 rng(8);
  const StateField mean = random_state(d.model, d.nodes(), rng);
  const SatConfig sat = SatConfig::natural(d.grid());
  const auto [rm, rp] = eval_new_linearised_pair(d, mean, d.zero_state(), sat, sat);
  EXPECT_EQ(max_abs(rp.r), 0.0);
  EXPECT_EQ(rm.r, eval_primal_residual(d, mean, Nonlinear{}, sat).r);
}

TEST(NewLinearised, DecompositionAndPerturbationEnergy) {
  for (ModelKind kind : {ModelKind::burgers1d, ModelKind::euler2d, ModelKind::euler3d_cyl,
                         ModelKind::swe2d}) {
    const Discretization d = make_disc(kind, SbpOrder::fourth);
    std::mt19937_64 rng(19);
    const StateField mean = random_state(d.model, d.nodes(), rng);
    StateField pert = random_state(d.model, d.nodes(), rng);
    if (kind == ModelKind::swe2d) {
      for (std::size_t i = 0; i < d.nodes(); ++i) pert(0, i) = 0.2 * (pert(0, i) - 1.25);
    }
    const SatConfig sat = SatConfig::natural(d.grid());
    const auto [rm, rp] = eval_new_linearised_pair(d, mean, pert, sat, sat);
    const StateField h = eval_remainder_H(d, mean, pert);
    const StateField full =
        eval_primal_residual(d, linear_combination(1.0, mean, 1.0, pert), Nonlinear{}, sat).r;
    StateField sum = linear_combination(1.0, rm.r, 1.0, rp.r);
    sum = linear_combination(1.0, sum, 1.0, h);
    const double scale = 1.0 + max_abs(full) + max_abs(h);
    EXPECT_LE(max_abs(linear_combination(1.0, full, -1.0, sum)), 1e-12 * scale)
        << to_string(kind);

    // The perturbation equation is in energy form with the mean matrices.
    const CoefficientField cm = coefficient_field(d.model, d.grid(), mean);
    double flux = 0.0;
    for (double c : face_contractions(d, cm, pert)) flux += c;
    const double lhs = inner_product(d.ops, pert, rp.r);
    EXPECT_LE(std::abs(lhs - flux), 1e-12 * (1.0 + std::abs(flux) + rp.term_norm * 10.0))
        << to_string(kind);
  }
}

TEST(Remainder, ZeroPerturbation) {
  const Discretization d = make_disc(ModelKind::euler3d_cyl, SbpOrder::second);
  std::mt19937_64 rng(2);
  const StateField mean = random_state(d.model, d.nodes(), rng);
  EXPECT_EQ(max_abs(eval_remainder_H(d, mean, d.zero_state())), 0.0);
}

TEST(Remainder, BurgersHandExpansion) {
  // A' = u'/3, so H = (1/3) [D(u' u') + u' D u'].
  const Discretization d(make_model(ModelKind::burgers1d), Grid({Axis{21, 0.0, 1.0}}),
                         SbpOrder::fourth);
  std::mt19937_64 rng(4);
  const StateField mean = random_state(d.model, d.nodes(), rng);
  const StateField pert = random_state(d.model, d.nodes(), rng);
  StateField sq = d.zero_state();
  for (std::size_t i = 0; i < d.nodes(); ++i) sq(0, i) = pert(0, i) * pert(0, i);
  const StateField dsq = apply_derivative(d.ops, sq, 0);
  const StateField dp = apply_derivative(d.ops, pert, 0);
  const StateField h = eval_remainder_H(d, mean, pert);
  for (std::size_t i = 0; i < d.nodes(); ++i) {
    const double expected = (dsq(0, i) + pert(0, i) * dp(0, i)) / 3.0;
    EXPECT_NEAR(h(0, i), expected, 1e-13 * (1.0 + std::abs(expected)));
  }
}

TEST(Remainder, BurgersExactlyQuadratic) {
  const Discretization d = make_disc(ModelKind::burgers1d, SbpOrder::second);
  std::mt19937_64 rng(6);
  const StateField mean = random_state(d.model, d.nodes(), rng);
  const StateField pert = random_state(d.model, d.nodes(), rng);
  const double h1 = max_abs(eval_remainder_H(d, mean, pert));
  for (double eps : {0.5, 1e-2, 1e-4}) {
    const double he = max_abs(eval_remainder_H(d, mean, linear_combination(eps, pert, 0.0, pert)));
    EXPECT_NEAR(he / (eps * eps * h1), 1.0, 1e-12);
  }
}

TEST(StandardLinearised, ConstantMeanHasNoVolumeGrowth) {
  const Discretization d(make_model(ModelKind::burgers1d), Grid({Axis{32, 0.0, 1.0, true}}),
                         SbpOrder::second);
  const StateField mean(1, 32, 0.6);
  std::mt19937_64 rng(5);
  const StateField pert = random_state(d.model, d.nodes(), rng);
  const EnergyReport r =
      energy_report(d, pert, StandardLinearised{mean}, SatConfig::natural(d.grid()), 0.0);
  EXPECT_LE(std::abs(r.volume_residual), 1e-12 * r.scale);
}

TEST(StandardLinearised, VolumeResidualObeysBound) {
  // |rate| <= max |D ubar| ||u'||^2 + 10 h^p scale.
  for (std::size_t n : {32u, 64u}) {
    const Discretization d(make_model(ModelKind::burgers1d), Grid({Axis{n, 0.0, 1.0, true}}),
                           SbpOrder::second);
    StateField mean = d.zero_state(), pert = d.zero_state();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = d.grid().position(i)[0];
      mean(0, i) = std::sin(2.0 * M_PI * x);
      pert(0, i) = 1.0 + std::cos(2.0 * M_PI * x);
    }
    const EnergyReport r =
        energy_report(d, pert, StandardLinearised{mean}, SatConfig::natural(d.grid()), 0.0);
    const double dmax = max_abs(apply_derivative(d.ops, mean, 0));
    const double h = 1.0 / static_cast<double>(n);
    EXPECT_LE(std::abs(r.volume_residual), dmax * inner_product(d.ops, pert, pert) + 10.0 * h * h * r.scale);
    EXPECT_GT(std::abs(r.volume_residual), 0.1);
  }
}

TEST(StandardLinearised, RejectsUnsupportedModels) {
  const Discretization d = make_disc(ModelKind::euler2d, SbpOrder::second);
  const StateField z = d.zero_state();
  EXPECT_THROW(eval_standard_linearised_residual(d, z, z, SatConfig{}), Error);
}

TEST(Shapes, MismatchedFieldsRejected) {
  const Discretization d = make_disc(ModelKind::swe2d, SbpOrder::second);
  EXPECT_THROW(eval_primal_residual(d, StateField(2, d.nodes()), Nonlinear{}, SatConfig{}),
               ShapeError);
}

}  // namespace
