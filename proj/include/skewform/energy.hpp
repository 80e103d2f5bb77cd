#pragma once

// Energies, energy rates, boundary fluxes and the conservation defect.
//
// Conventions: E = quadrature of U^T P U (no factor 1/2). With P U_t = -R,
// rate = dE/dt = -2 <U, R>, boundary_flux = -2 s sum_faces oint U^T (n.A) U
// (s = +1 primal, -1 dual), sat_contribution = 2 <U, SAT> and
// volume_residual = rate - boundary_flux - sat_contribution.

#include <array>
#include <span>
#include <vector>

#include "skewform/spatial_op.hpp"

namespace skewform {

struct EnergyReport {
  double t = 0.0;
  double E = 0.0;
  double rate = 0.0;
  double boundary_flux = 0.0;
  double sat_contribution = 0.0;
  double volume_residual = 0.0;
  /// Magnitude the volume residual is measured against.
  double scale = 1.0;
  std::vector<Face> faces;
  /// Per-face share of boundary_flux, in grid face order.
  std::vector<double> face_flux;
};

double total_energy(const Discretization& d, const StateField& u);

/// oint U^T (n . A) U over each face with the given matrices, signed by the
/// outward normal; faces of periodic axes are omitted.
std::vector<double> face_contractions(const Discretization& d,
                                      const CoefficientField& coeff,
                                      const StateField& u);

/// Energy report for the primal (or dual) problem in a skew-symmetric mode,
/// or the standard linearisation (boundary flux then uses oint U'^T (n.script-A) U'
/// with factor 1, the form left after one integration by parts).
EnergyReport energy_report(const Discretization& d, const StateField& u,
                           const CoeffMode& mode, const SatConfig& sat, double t,
                           Direction dir = Direction::primal);

/// Energy report from an already assembled residual.
EnergyReport energy_report_from(const Discretization& d, const StateField& u,
                                const Residual& res,
                                const std::vector<double>& contractions,
                                double flux_factor, double t);

/// U^T (n_i A_i(U)) U at one point.
double boundary_contraction(const ModelSpec& model, std::span<const double> u,
                            std::span<const double> normal,
                            const Position& pos = {1.0, 0.0, 0.0});

/// U'^T (n_i A_i(mean)) U' at one point.
double boundary_contraction_linearised(const ModelSpec& model,
                                       std::span<const double> mean,
                                       std::span<const double> pert,
                                       std::span<const double> normal,
                                       const Position& pos = {1.0, 0.0, 0.0});

}  // namespace skewform
