#pragma once

// Diagonal-norm summation-by-parts first-derivative operators and their
// Kronecker application to multi-component fields on structured grids.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skewform/grid.hpp"
#include "skewform/kernels.hpp"

namespace skewform {

/// Accuracy pair (interior order, boundary order) of the shipped closures.
enum class SbpOrder { second, fourth };

struct AccuracyOrder {
  int interior;
  int boundary;
};

AccuracyOrder accuracy(SbpOrder order);
std::string to_string(SbpOrder order);
/// Parses "2", "(2,1)", "2,1", "4", "(4,2)", "4,2".
SbpOrder parse_sbp_order(const std::string& text);
/// Smallest node count the closure supports.
std::size_t minimum_nodes(SbpOrder order);

/// One-axis SBP operator D = P^{-1} Q with Q + Q^T = B.
///
/// Stored in banded form: an antisymmetric interior stencil and dense
/// closure blocks at both ends (none for periodic axes, where Q is a
/// skew-symmetric circulant and B = 0). Dense Q and D are produced on
/// demand and agree with the banded application.
class SbpOperator1D {
 public:
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  SbpOrder order() const { return order_; }
  bool periodic() const { return periodic_; }

  /// Quadrature weights P (units of length).
  std::span<const double> weights() const { return weights_; }
  /// Diagonal of B: (-1, 0, ..., 0, 1), all zero when periodic.
  std::span<const double> boundary_selector() const { return selector_; }

  /// Interior stencil half-width r.
  std::size_t radius() const { return interior_d_.size(); }
  /// D coefficients c_k, k = 1..r, of the stencil sum_k c_k (u_{i+k} - u_{i-k}).
  std::span<const double> interior_coefficients() const { return interior_d_; }
  /// Number of closure rows at each end.
  std::size_t closure_rows() const { return periodic_ ? 0 : closure_rows_; }
  std::size_t closure_width() const { return closure_width_; }
  /// D coefficient of closure row i at column j (left end).
  double closure_coefficient(std::size_t i, std::size_t j) const {
    return closure_d_[i * closure_width_ + j];
  }

  /// Dense n x n Q (dimensionless), row-major.
  std::vector<double> q_matrix() const;
  /// Dense n x n D (1/length), row-major; entries are Q_ij / P_i.
  std::vector<double> d_matrix() const;

  /// Applies D to one contiguous line of n values.
  void apply(std::span<const double> in, std::span<double> out,
             const kernels::KernelTable& k = kernels::active_kernels()) const;

 private:
  friend SbpOperator1D build_sbp_operator(SbpOrder, std::size_t, double, bool);

  std::size_t n_ = 0;
  double h_ = 0.0;
  SbpOrder order_ = SbpOrder::second;
  bool periodic_ = false;
  std::vector<double> weights_;
  std::vector<double> selector_;
  std::vector<double> interior_q_;   // q_k, dimensionless
  std::vector<double> interior_d_;   // q_k / h
  std::size_t closure_rows_ = 0;
  std::size_t closure_width_ = 0;
  std::vector<double> closure_q_;    // rows x width, dimensionless
  std::vector<double> closure_d_;    // Q_ij / P_i
};

/// Builds the (2,1) or (4,2) diagonal-norm operator on n nodes of spacing h.
/// Throws skewform::Error for n below the closure width or h <= 0.
SbpOperator1D build_sbp_operator(SbpOrder order, std::size_t n, double h,
                                 bool periodic = false);

/// A grid with one SBP operator per axis and the tensor-product quadrature.
class GridOperators {
 public:
  GridOperators() = default;
  GridOperators(Grid grid, SbpOrder order,
                const kernels::KernelTable& k = kernels::active_kernels());

  const Grid& grid() const { return grid_; }
  SbpOrder order() const { return order_; }
  const SbpOperator1D& op(int axis) const {
    return ops_.at(static_cast<std::size_t>(axis));
  }
  const kernels::KernelTable& kernels() const { return *kernels_; }

  /// Quadrature weight of every node: product of the per-axis weights.
  std::span<const double> node_weights() const { return node_weights_; }
  /// Quadrature weights of the nodes of `face` (transverse product, unsigned).
  std::vector<double> face_weights(const Face& face) const;

 private:
  Grid grid_;
  SbpOrder order_ = SbpOrder::second;
  std::vector<SbpOperator1D> ops_;
  std::vector<double> node_weights_;
  const kernels::KernelTable* kernels_ = nullptr;
};

/// Per-node n x n matrices stored entry-major: entry (r, s) is a contiguous
/// array over nodes. Matches the diagonal-block injection of nodal
/// coefficient values into the Kronecker-assembled operator.
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(std::size_t n, std::size_t nodes)
      : n_(n), nodes_(nodes), data_(n * n * nodes, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t nodes() const { return nodes_; }
  bool empty() const { return data_.empty(); }

  double* entry(std::size_t r, std::size_t s) {
    return data_.data() + (r * n_ + s) * nodes_;
  }
  const double* entry(std::size_t r, std::size_t s) const {
    return data_.data() + (r * n_ + s) * nodes_;
  }
  double& at(std::size_t r, std::size_t s, std::size_t node) {
    return entry(r, s)[node];
  }
  double at(std::size_t r, std::size_t s, std::size_t node) const {
    return entry(r, s)[node];
  }

 private:
  std::size_t n_ = 0;
  std::size_t nodes_ = 0;
  std::vector<double> data_;
};

/// Applies D along `axis` to every component and every transverse line.
/// `in` and `out` hold n_comp blocks of grid.nodes() values and must not alias.
void apply_derivative_to(const GridOperators& go, int axis, std::size_t n_comp,
                         const double* in, double* out);

StateField apply_derivative(const GridOperators& go, const StateField& field,
                            int axis);

/// Quadrature inner product sum_nodes w_node u(node)^T W(node) v(node), with
/// W = identity when `weight` is null. Sequential lexicographic summation.
double inner_product(const GridOperators& go, const StateField& u,
                     const StateField& v, const MatrixField* weight = nullptr);

/// sqrt of the quadrature of |u|^2 for n_comp blocks of grid.nodes() values.
double quadrature_norm(const GridOperators& go, const double* data,
                       std::size_t n_comp);

/// Signed face term of the SBP identity: the outward sign times the
/// transverse quadrature of u^T v over `face`. Zero on periodic axes.
double boundary_quadrature(const GridOperators& go, const StateField& u,
                           const StateField& v, const Face& face);

}  // namespace skewform
