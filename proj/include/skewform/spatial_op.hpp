#pragma once

// Discrete spatial residuals of the skew-symmetric form
//   L(U; V) = sum_i [D_i (A_i(V) U) + A_i(V)^T D_i U] + C(V) U
// with the coefficient matrices injected nodewise on the diagonal.

#include <utility>
#include <variant>

#include "skewform/boundary.hpp"
#include "skewform/discretization.hpp"

namespace skewform {

/// V = U.
struct Nonlinear {};
/// V fixed.
struct Frozen {
  StateField v;
};
/// Perturbation equation of the new linearisation: V = mean state.
struct NewLinearised {
  StateField mean;
};
/// Classical advective-form linearisation about the mean state.
struct StandardLinearised {
  StateField mean;
};

using CoeffMode = std::variant<Nonlinear, Frozen, NewLinearised, StandardLinearised>;

struct Residual {
  StateField r;
  StateField sat;
  /// Sum of the quadrature norms of the assembled terms, for tolerances.
  double term_norm = 0.0;
};

/// out = out + sign * L(U; coeff). Terms are added in a fixed order so that
/// sign = -1 reproduces the exact negation of sign = +1.
void accumulate_skew(const Discretization& d, const CoefficientField& coeff,
                     const StateField& u, StateField& out, double sign,
                     double* term_norm = nullptr);

StateField skew_operator(const Discretization& d, const CoefficientField& coeff,
                         const StateField& u);

/// Coefficient field selected by a (non-standard) mode for the state `u`.
CoefficientField mode_coefficients(const Discretization& d, const StateField& u,
                                   const CoeffMode& mode);

/// R = L(U; V) - SAT - F; the scheme is P U_t = -R.
Residual eval_primal_residual(const Discretization& d, const StateField& u,
                              const CoeffMode& mode, const SatConfig& sat,
                              const StateField* forcing = nullptr);

/// R = -L(Phi; V) - SAT - G; the dual scheme in tau is P Phi_tau = -R.
Residual eval_dual_residual(const Discretization& d, const StateField& phi,
                            const CoeffMode& mode, const SatConfig& sat,
                            const StateField* forcing = nullptr);

/// (R_mean, R_pert): the mean equation with matrices at mean + pert acting on
/// the mean, and the perturbation equation with mean matrices acting on pert.
std::pair<Residual, Residual> eval_new_linearised_pair(
    const Discretization& d, const StateField& mean, const StateField& pert,
    const SatConfig& sat_mean, const SatConfig& sat_pert,
    const StateField* forcing = nullptr);

/// sum_i script-A_i(mean) D_i pert + sum_i [d/dU (script-A_i(U) D_i mean)] pert
/// + C pert. Burgers and SWE only; SAT limited to periodic or none.
Residual eval_standard_linearised_residual(const Discretization& d,
                                           const StateField& mean,
                                           const StateField& pert,
                                           const SatConfig& sat);

/// H = sum_i [D_i (A'_i pert) + A'_i^T D_i pert] + C' pert.
StateField eval_remainder_H(const Discretization& d, const StateField& mean,
                            const StateField& pert);

}  // namespace skewform
