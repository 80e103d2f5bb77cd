#pragma once

// Boundary analysis (eigen-counting of the symmetric boundary matrix) and
// SAT penalty closures.

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "skewform/discretization.hpp"
#include "skewform/small_matrix.hpp"

namespace skewform {

enum class Formulation { nonlinear, linearised, rewritten };

std::string to_string(Formulation f);
Formulation parse_formulation(const std::string& text);

struct BoundaryAnalysis {
  Formulation formulation = Formulation::nonlinear;
  std::array<double, 3> normal{0.0, 0.0, 0.0};
  double alpha = 1.0;
  double beta = 1.0;
  /// Symmetric part of the boundary matrix (nonlinear, linearised) or the
  /// diagonal weight of the rewritten quadratic form.
  SmallMatrix symmetric;
  std::vector<double> eigenvalues;  // ascending
  int negative = 0;
  int zero = 0;
  int positive = 0;
  /// Boundary conditions implied by the minimal-count convention.
  int conditions = 0;
  /// Transformed quantities (U1^2, Un^2 + U1^2, Un Ut); rewritten only.
  std::array<double, 3> rewritten_vars{0.0, 0.0, 0.0};
  /// U^T (n_i A_i) U, evaluated in the analysed formulation.
  double contraction = 0.0;
};

struct AnalysisInput {
  ModelSpec model;
  /// State U (nonlinear, rewritten) or mean state (linearised).
  std::vector<double> state;
  /// Perturbation, used for the linearised contraction only.
  std::vector<double> perturbation;
  std::array<double, 3> normal{1.0, 0.0, 0.0};
  Position position{1.0, 0.0, 0.0};
  Formulation formulation = Formulation::nonlinear;
  double delta_n = 1e-8;
  double delta_1 = 1e-8;
};

/// Eigenvalues of the symmetric boundary matrix and the implied number of
/// boundary conditions. Throws AdmissibilityError for a glancing face
/// (|U_n| < delta_n) or sqrt(U1) < delta_1 in the rewritten formulation.
BoundaryAnalysis analyze_boundary(const AnalysisInput& in);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
std::vector<double> jacobi_eigenvalues(const SmallMatrix& s, double tol = 1e-14);
/// Eigen-decomposition by cyclic Jacobi; columns of `vectors` are eigenvectors.
void jacobi_eigen(const SmallMatrix& s, std::vector<double>& values,
                  SmallMatrix& vectors, double tol = 1e-14);

/// sum_i n_i A_i at a point.
SmallMatrix normal_matrix(const PointCoefficients& pc, int dim,
                          std::span<const double> normal);

/// Positive and negative parts of a symmetric matrix.
SmallMatrix positive_part(const SmallMatrix& s);
SmallMatrix negative_part(const SmallMatrix& s);

enum class Closure { none, periodic, dissipative, swe_two_condition };

std::string to_string(Closure c);
Closure parse_closure(const std::string& text);

struct FaceClosure {
  Closure kind = Closure::none;
  /// Penalty scale; dissipative closures require sigma >= 1/2, the SWE
  /// two-condition closure sigma = 1.
  double sigma = 1.0;
  /// Boundary data, component-major over the face nodes: n_comp blocks for
  /// dissipative closures, (g2, g3) for the SWE closure. Empty = homogeneous.
  std::vector<double> data;
};

struct SatConfig {
  std::map<int, FaceClosure> faces;  // keyed by Face::id()

  const FaceClosure& at(const Face& f) const;
  SatConfig& set(const Face& f, FaceClosure c) {
    faces[f.id()] = std::move(c);
    return *this;
  }
  /// Periodic closure on every periodic axis, `none` elsewhere.
  static SatConfig natural(const Grid& grid);
};

/// Throws Error for invalid face/closure combinations.
void validate_sat(const Discretization& d, const SatConfig& sat);

/// SAT field added to the residual as R = L - SAT. `coeff` are the matrices
/// the face terms are measured with (A(V) for the state `u`).
StateField build_sat(const Discretization& d, const CoefficientField& coeff,
                     const StateField& u, const SatConfig& sat,
                     Direction dir = Direction::primal);

/// Homogeneous-data bound of the SWE two-condition closure on one face:
/// the quadrature of (-U1^4 + g2^4 + g3^4) / (2 min|U_n| min sqrt(U1)).
double swe_two_condition_bound(const Discretization& d, const StateField& u,
                               const Face& face, const FaceClosure& closure);

}  // namespace skewform
