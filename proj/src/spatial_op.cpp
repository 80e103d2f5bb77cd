#include "skewform/spatial_op.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "skewform/error.hpp"

namespace skewform {
namespace {

// out_r = sum_s M_{rs} x_s (or M_{sr} when transposed), nodewise.
void apply_matrix(const kernels::KernelTable& k, const MatrixField& m,
                  const double* x, double* out, std::size_t nodes,
                  bool transposed) {
  const std::size_t nc = m.n();
  for (std::size_t r = 0; r < nc; ++r) {
    double* o = out + r * nodes;
    std::fill(o, o + nodes, 0.0);
    for (std::size_t s = 0; s < nc; ++s) {
      const double* e = transposed ? m.entry(s, r) : m.entry(r, s);
      k.multiply_add(e, x + s * nodes, o, nodes);
    }
  }
}

void accumulate(const kernels::KernelTable& k, const double* term, double* out,
                std::size_t len, double sign) {
  if (sign > 0) {
    k.add(term, out, len);
  } else {
    k.subtract(term, out, len);
  }
}

void subtract_field(const kernels::KernelTable& k, const StateField& x, StateField& out) {
  k.subtract(x.data().data(), out.data().data(), out.size());
}

const StateField& mean_of(const CoeffMode& mode) {
  if (const auto* m = std::get_if<NewLinearised>(&mode)) return m->mean;
  return std::get<StandardLinearised>(mode).mean;
}

Residual assemble(const Discretization& d, const StateField& u,
                  const CoeffMode& mode, const SatConfig& sat,
                  const StateField* forcing, Direction dir) {
  require_state(d, u, dir == Direction::primal ? "primal residual" : "dual residual");
  if (std::holds_alternative<StandardLinearised>(mode)) {
    if (dir == Direction::dual) {
      throw Error("the standard linearisation has no dual residual here");
    }
    return eval_standard_linearised_residual(d, mean_of(mode), u, sat);
  }
  validate_sat(d, sat);
  const CoefficientField cf = mode_coefficients(d, u, mode);
  Residual res;
  res.r = d.zero_state();
  accumulate_skew(d, cf, u, res.r, dir == Direction::primal ? 1.0 : -1.0,
                  &res.term_norm);
  res.sat = build_sat(d, cf, u, sat, dir);
  const auto& k = d.ops.kernels();
  subtract_field(k, res.sat, res.r);
  res.term_norm += quadrature_norm(d.ops, res.sat.data().data(), d.n_comp());
  if (forcing != nullptr) {
    require_state(d, *forcing, "forcing");
    subtract_field(k, *forcing, res.r);
  }
  return res;
}

}  // namespace

void accumulate_skew(const Discretization& d, const CoefficientField& coeff,
                     const StateField& u, StateField& out, double sign,
                     double* term_norm) {
  require_state(d, u, "skew operator");
  const auto& k = d.ops.kernels();
  const std::size_t nodes = d.nodes();
  const std::size_t nc = d.n_comp();
  const std::size_t len = nc * nodes;
  std::vector<double> au(len), dau(len), du(len), adu(len);
  const double* x = u.data().data();
  double* o = out.data().data();
  double norm = 0.0;
  for (int a = 0; a < d.grid().dim(); ++a) {
    apply_matrix(k, coeff.A[a], x, au.data(), nodes, false);
    apply_derivative_to(d.ops, a, nc, au.data(), dau.data());
    accumulate(k, dau.data(), o, len, sign);
    apply_derivative_to(d.ops, a, nc, x, du.data());
    apply_matrix(k, coeff.A[a], du.data(), adu.data(), nodes, true);
    accumulate(k, adu.data(), o, len, sign);
    if (term_norm != nullptr) {
      norm += quadrature_norm(d.ops, dau.data(), nc) +
              quadrature_norm(d.ops, adu.data(), nc);
    }
  }
  apply_matrix(k, coeff.C, x, au.data(), nodes, false);
  accumulate(k, au.data(), o, len, sign);
  if (term_norm != nullptr) {
    *term_norm += norm + quadrature_norm(d.ops, au.data(), nc);
  }
}

StateField skew_operator(const Discretization& d, const CoefficientField& coeff,
                         const StateField& u) {
  StateField out = d.zero_state();
  accumulate_skew(d, coeff, u, out, 1.0);
  return out;
}

CoefficientField mode_coefficients(const Discretization& d, const StateField& u,
                                   const CoeffMode& mode) {
  if (std::holds_alternative<Nonlinear>(mode)) {
    return coefficient_field(d.model, d.grid(), u);
  }
  if (const auto* f = std::get_if<Frozen>(&mode)) {
    require_state(d, f->v, "frozen coefficient state");
    return coefficient_field(d.model, d.grid(), f->v);
  }
  if (const auto* m = std::get_if<NewLinearised>(&mode)) {
    require_state(d, m->mean, "mean state");
    return coefficient_field(d.model, d.grid(), m->mean);
  }
  throw Error("the standard linearisation is not in skew-symmetric form");
}

Residual eval_primal_residual(const Discretization& d, const StateField& u,
                              const CoeffMode& mode, const SatConfig& sat,
                              const StateField* forcing) {
  return assemble(d, u, mode, sat, forcing, Direction::primal);
}

Residual eval_dual_residual(const Discretization& d, const StateField& phi,
                            const CoeffMode& mode, const SatConfig& sat,
                            const StateField* forcing) {
  return assemble(d, phi, mode, sat, forcing, Direction::dual);
}

std::pair<Residual, Residual> eval_new_linearised_pair(
    const Discretization& d, const StateField& mean, const StateField& pert,
    const SatConfig& sat_mean, const SatConfig& sat_pert,
    const StateField* forcing) {
  require_state(d, mean, "mean state");
  require_state(d, pert, "perturbation");
  const StateField total = linear_combination(1.0, mean, 1.0, pert);
  Residual r_mean = assemble(d, mean, Frozen{total}, sat_mean, forcing, Direction::primal);
  Residual r_pert = assemble(d, pert, NewLinearised{mean}, sat_pert, nullptr,
                             Direction::primal);
  return {std::move(r_mean), std::move(r_pert)};
}

Residual eval_standard_linearised_residual(const Discretization& d,
                                           const StateField& mean,
                                           const StateField& pert,
                                           const SatConfig& sat) {
  const ModelKind kind = d.model.kind();
  if (kind != ModelKind::burgers1d && kind != ModelKind::swe2d) {
    throw Error("the standard linearisation is implemented for burgers1d and swe2d only");
  }
  require_state(d, mean, "mean state");
  require_state(d, pert, "perturbation");
  validate_sat(d, sat);
  for (const auto& [id, fc] : sat.faces) {
    if (fc.kind != Closure::periodic && fc.kind != Closure::none) {
      throw Error("the standard linearisation supports periodic or no closures only");
    }
  }
  const Grid& g = d.grid();
  const std::size_t nodes = g.nodes();
  const std::size_t nc = d.n_comp();
  Residual res;
  res.r = d.zero_state();
  res.sat = d.zero_state();
  std::vector<double> volume(nc * nodes, 0.0);

  constexpr double kStep = 1e-30;
  std::array<double, 3> ub{}, up{};
  std::array<std::complex<double>, 3> uc{};
  for (int a = 0; a < g.dim(); ++a) {
    const StateField dmean = apply_derivative(d.ops, mean, a);
    const StateField dpert = apply_derivative(d.ops, pert, a);
    for (std::size_t node = 0; node < nodes; ++node) {
      mean.gather(node, std::span<double>(ub.data(), nc));
      d.model.check_admissible(std::span<const double>(ub.data(), nc));
      const auto adv = advective_form(kind, ub.data());
      for (std::size_t r = 0; r < nc; ++r) {
        double acc = 0.0;
        for (std::size_t s = 0; s < nc; ++s) acc += adv.a[a][r][s] * dpert(s, node);
        volume[r * nodes + node] = acc;
      }
      pert.gather(node, std::span<double>(up.data(), nc));
      for (std::size_t kk = 0; kk < nc; ++kk) {
        for (std::size_t s = 0; s < nc; ++s) uc[s] = ub[s];
        uc[kk] += std::complex<double>(0.0, kStep);
        const auto advc = advective_form(kind, uc.data());
        for (std::size_t r = 0; r < nc; ++r) {
          std::complex<double> acc = 0.0;
          for (std::size_t s = 0; s < nc; ++s) acc += advc.a[a][r][s] * dmean(s, node);
          volume[r * nodes + node] += (acc.imag() / kStep) * up[kk];
        }
      }
    }
    d.ops.kernels().add(volume.data(), res.r.data().data(), volume.size());
    res.term_norm += quadrature_norm(d.ops, volume.data(), nc);
  }
  if (kind == ModelKind::swe2d) {
    for (std::size_t node = 0; node < nodes; ++node) {
      const double f = d.model.coriolis(g.position(node));
      res.r(1, node) += -f * pert(2, node);
      res.r(2, node) += f * pert(1, node);
    }
  }
  return res;
}

StateField eval_remainder_H(const Discretization& d, const StateField& mean,
                            const StateField& pert) {
  require_state(d, mean, "mean state");
  require_state(d, pert, "perturbation");
  const CoefficientSplit split = coeff_split(d.model, d.grid(), mean, pert);
  return skew_operator(d, split.pert, pert);
}

}  // namespace skewform
