#include "skewform/energy.hpp"

#include <cmath>

#include "skewform/error.hpp"

namespace skewform {

double total_energy(const Discretization& d, const StateField& u) {
  require_state(d, u, "total_energy");
  return inner_product(d.ops, u, u, &d.norm);
}

std::vector<double> face_contractions(const Discretization& d,
                                      const CoefficientField& coeff,
                                      const StateField& u) {
  const Grid& g = d.grid();
  const std::size_t nc = d.n_comp();
  std::vector<double> out;
  for (const Face& f : g.faces()) {
    const auto nodes = g.face_nodes(f);
    const auto fw = d.ops.face_weights(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::size_t node = nodes[i];
      double local = 0.0;
      for (std::size_t r = 0; r < nc; ++r) {
        double row = 0.0;
        for (std::size_t s = 0; s < nc; ++s)
          row += coeff.A[f.axis].at(r, s, node) * u(s, node);
        local += u(r, node) * row;
      }
      acc += fw[i] * local;
    }
    out.push_back(f.sign() * acc);
  }
  return out;
}

namespace {

std::vector<double> standard_contractions(const Discretization& d,
                                          const StateField& mean,
                                          const StateField& pert) {
  const Grid& g = d.grid();
  const std::size_t nc = d.n_comp();
  std::vector<double> out;
  std::array<double, 3> ub{};
  for (const Face& f : g.faces()) {
    const auto nodes = g.face_nodes(f);
    const auto fw = d.ops.face_weights(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::size_t node = nodes[i];
      mean.gather(node, std::span<double>(ub.data(), nc));
      const auto adv = advective_form(d.model.kind(), ub.data());
      double local = 0.0;
      for (std::size_t r = 0; r < nc; ++r)
        for (std::size_t s = 0; s < nc; ++s)
          local += pert(r, node) * adv.a[f.axis][r][s] * pert(s, node);
      acc += fw[i] * local;
    }
    out.push_back(f.sign() * acc);
  }
  return out;
}

}  // namespace

EnergyReport energy_report_from(const Discretization& d, const StateField& u,
                                const Residual& res,
                                const std::vector<double>& contractions,
                                double flux_factor, double t) {
  EnergyReport rep;
  rep.t = t;
  rep.E = total_energy(d, u);
  rep.faces = d.grid().faces();
  rep.rate = -2.0 * inner_product(d.ops, u, res.r);
  rep.sat_contribution = 2.0 * inner_product(d.ops, u, res.sat);
  double face_abs = 0.0;
  for (double c : contractions) {
    const double f = -flux_factor * c;
    rep.face_flux.push_back(f);
    rep.boundary_flux += f;
    face_abs += std::abs(f);
  }
  rep.volume_residual = rep.rate - rep.boundary_flux - rep.sat_contribution;
  const double unorm = quadrature_norm(d.ops, u.data().data(), d.n_comp());
  rep.scale = 1.0 + 2.0 * unorm * res.term_norm + face_abs;
  return rep;
}

EnergyReport energy_report(const Discretization& d, const StateField& u,
                           const CoeffMode& mode, const SatConfig& sat, double t,
                           Direction dir) {
  if (const auto* s = std::get_if<StandardLinearised>(&mode)) {
    const Residual res = eval_standard_linearised_residual(d, s->mean, u, sat);
    return energy_report_from(d, u, res, standard_contractions(d, s->mean, u), 1.0, t);
  }
  const Residual res = dir == Direction::primal
                           ? eval_primal_residual(d, u, mode, sat)
                           : eval_dual_residual(d, u, mode, sat);
  const CoefficientField cf = mode_coefficients(d, u, mode);
  return energy_report_from(d, u, res, face_contractions(d, cf, u),
                            dir == Direction::primal ? 2.0 : -2.0, t);
}

double boundary_contraction(const ModelSpec& model, std::span<const double> u,
                            std::span<const double> normal, const Position& pos) {
  return boundary_contraction_linearised(model, u, u, normal, pos);
}

double boundary_contraction_linearised(const ModelSpec& model,
                                       std::span<const double> mean,
                                       std::span<const double> pert,
                                       std::span<const double> normal,
                                       const Position& pos) {
  const std::size_t nc = static_cast<std::size_t>(model.n_comp());
  if (mean.size() != nc || pert.size() != nc ||
      normal.size() < static_cast<std::size_t>(model.dim())) {
    throw ShapeError("boundary_contraction: size mismatch");
  }
  const PointCoefficients pc = model.coefficients(mean, pos);
  SmallMatrix m(static_cast<int>(nc));
  for (int a = 0; a < model.dim(); ++a) {
    if (normal[a] != 0.0) m = m + normal[a] * pc.A[a];
  }
  return m.bilinear(pert, pert);
}

}  // namespace skewform
