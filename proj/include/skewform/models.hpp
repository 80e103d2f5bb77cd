#pragma once

// The four model systems in skew-symmetric form
//   P U_t + sum_i [(A_i(V) U)_{x_i} + A_i(V)^T U_{x_i}] + C(V) U = 0.

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "skewform/grid.hpp"
#include "skewform/sbp.hpp"
#include "skewform/small_matrix.hpp"

namespace skewform {

enum class ModelKind { burgers1d, euler2d, euler3d_cyl, swe2d };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

/// Free parameters. alpha and beta are the dimensionless SWE splitting
/// parameters, g is gravity (m/s^2) and the Coriolis parameter is
/// f(y) = coriolis_f0 + coriolis_beta * y (1/s).
struct ModelParams {
  double alpha = 1.0;
  double beta = 1.0;
  double g = 9.81;
  double coriolis_f0 = 0.0;
  double coriolis_beta = 0.0;
};

/// Coefficient matrices of one node. Only the first dim() entries of A are set.
struct PointCoefficients {
  std::array<SmallMatrix, 3> A;
  SmallMatrix C;
};

class ModelSpec {
 public:
  ModelSpec(ModelKind kind, ModelParams params);

  ModelKind kind() const { return kind_; }
  const ModelParams& params() const { return params_; }
  int n_comp() const { return n_comp_; }
  int dim() const { return dim_; }
  /// Whether P is invertible, i.e. the model can be time-marched.
  bool norm_invertible() const {
    return kind_ == ModelKind::burgers1d || kind_ == ModelKind::swe2d;
  }
  std::vector<std::string> component_names() const;

  SmallMatrix norm_matrix(const Position& pos) const;
  double coriolis(const Position& pos) const;

  bool admissible(std::span<const double> v) const;
  /// Throws AdmissibilityError when `v` is outside the admissible set.
  void check_admissible(std::span<const double> v) const;
  /// Throws ShapeError on a dimension mismatch and Error for a cylindrical
  /// grid with r_min <= 0.
  void validate_grid(const Grid& grid) const;

  PointCoefficients coefficients(std::span<const double> v,
                                 const Position& pos) const;

  /// Largest characteristic speed along `axis` (physical units, per unit
  /// coordinate length).
  double max_wave_speed(std::span<const double> v, int axis) const;

 private:
  ModelKind kind_;
  ModelParams params_;
  int n_comp_;
  int dim_;
};

/// Throws Error for g <= 0 or non-finite parameters.
ModelSpec make_model(ModelKind kind, const ModelParams& params = {});

/// Nodewise coefficient matrices of a whole state.
struct CoefficientField {
  std::vector<MatrixField> A;
  MatrixField C;
};

/// Throws AdmissibilityError naming the first offending node.
CoefficientField coefficient_field(const ModelSpec& model, const Grid& grid,
                                   const StateField& v);

MatrixField norm_field(const ModelSpec& model, const Grid& grid);

/// A'_i = A_i(mean + pert) - A_i(mean), C' likewise.
struct CoefficientSplit {
  CoefficientField mean;
  CoefficientField pert;
};

CoefficientSplit coeff_split(const ModelSpec& model, const Grid& grid,
                             const StateField& mean, const StateField& pert);

/// SWE variables U = (phi, sqrt(phi) u, sqrt(phi) v) from (phi, u, v).
StateField swe_transform(const StateField& primitive);
StateField swe_inverse(const StateField& u);

/// Advective (non-split) matrices script-A_i(U) of U_t + script-A_i U_{x_i} +
/// C U = 0, for the models with a standard linearisation: Burgers (A = u)
/// and SWE in the transformed variables. Templated so that the Jacobian of
/// script-A_i(U) g can be taken by complex step.
template <class T>
struct AdvectiveMatrices {
  int n = 0;
  int dim = 0;
  std::array<std::array<std::array<T, 3>, 3>, 2> a{};
};

template <class T>
AdvectiveMatrices<T> advective_form(ModelKind kind, const T* u) {
  AdvectiveMatrices<T> m;
  if (kind == ModelKind::burgers1d) {
    m.n = 1;
    m.dim = 1;
    m.a[0][0][0] = u[0];
    return m;
  }
  m.n = 3;
  m.dim = 2;
  using std::sqrt;
  const T s = sqrt(u[0]);
  const T s3 = s * s * s;
  const T u2 = u[1];
  const T u3 = u[2];
  auto& A = m.a[0];
  A[0] = {T(0.5) * u2 / s, s, T(0)};
  A[1] = {s - u2 * u2 / (T(4) * s3), T(1.5) * u2 / s, T(0)};
  A[2] = {-u2 * u3 / (T(4) * s3), T(0.5) * u3 / s, u2 / s};
  auto& B = m.a[1];
  B[0] = {T(0.5) * u3 / s, T(0), s};
  B[1] = {-u2 * u3 / (T(4) * s3), u3 / s, T(0.5) * u2 / s};
  B[2] = {s - u3 * u3 / (T(4) * s3), T(0), T(1.5) * u3 / s};
  return m;
}

}  // namespace skewform
