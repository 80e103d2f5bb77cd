#include "skewform/sbp.hpp"

#include <array>
#include <cmath>

#include "skewform/error.hpp"

namespace skewform {
namespace {

// Closure blocks of Q (dimensionless) and the P weights in units of h.
constexpr std::array<double, 2> kQ21{-0.5, 0.5};
constexpr std::array<double, 1> kW21{0.5};
constexpr std::array<double, 1> kInterior2{0.5};

constexpr std::array<double, 24> kQ42{
    -1.0 / 2.0, 59.0 / 96.0,  -1.0 / 12.0, -1.0 / 32.0, 0.0,        0.0,
    -59.0 / 96.0, 0.0,        59.0 / 96.0, 0.0,         0.0,        0.0,
    1.0 / 12.0, -59.0 / 96.0, 0.0,         59.0 / 96.0, -1.0 / 12.0, 0.0,
    1.0 / 32.0, 0.0,          -59.0 / 96.0, 0.0,        2.0 / 3.0,  -1.0 / 12.0,
};
constexpr std::array<double, 4> kW42{17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0,
                                     49.0 / 48.0};
constexpr std::array<double, 2> kInterior4{2.0 / 3.0, -1.0 / 12.0};

constexpr std::size_t kMaxRadius = 8;
constexpr std::size_t kMaxWidth = 8;

struct LineGeometry {
  std::size_t n;
  std::size_t inner;
};

// Applies the operator to one line block: `in` and `out` point at node 0 of
// a line whose consecutive nodes are `inner` apart and whose `inner`
// transverse copies are contiguous.
void apply_block(const SbpOperator1D& op, const std::vector<double>& right_d,
                 const double* in, double* out, LineGeometry g,
                 const kernels::KernelTable& k) {
  const std::size_t n = g.n;
  const std::size_t inner = g.inner;
  const std::size_t r = op.radius();
  const double* c = op.interior_coefficients().data();
  std::array<const double*, kMaxRadius> hi{};
  std::array<const double*, kMaxRadius> lo{};

  if (op.periodic()) {
    if (n > 2 * r) {
      for (std::size_t j = 1; j <= r; ++j) {
        hi[j - 1] = in + (r + j) * inner;
        lo[j - 1] = in + (r - j) * inner;
      }
      k.central_difference(hi.data(), lo.data(), c, r, out + r * inner,
                           (n - 2 * r) * inner);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= r && i < n - r) continue;
      for (std::size_t j = 1; j <= r; ++j) {
        hi[j - 1] = in + ((i + j) % n) * inner;
        lo[j - 1] = in + ((i + n - j) % n) * inner;
      }
      k.central_difference(hi.data(), lo.data(), c, r, out + i * inner, inner);
    }
    return;
  }

  const std::size_t m = op.closure_rows();
  const std::size_t w = op.closure_width();
  for (std::size_t j = 1; j <= r; ++j) {
    hi[j - 1] = in + (m + j) * inner;
    lo[j - 1] = in + (m - j) * inner;
  }
  k.central_difference(hi.data(), lo.data(), c, r, out + m * inner,
                       (n - 2 * m) * inner);

  std::array<const double*, kMaxWidth> rows{};
  std::array<double, kMaxWidth> coeff{};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      rows[j] = in + j * inner;
      coeff[j] = op.closure_coefficient(i, j);
    }
    k.weighted_sum(rows.data(), coeff.data(), w, out + i * inner, inner);
    for (std::size_t j = 0; j < w; ++j) rows[j] = in + (n - 1 - j) * inner;
    k.weighted_sum(rows.data(), right_d.data() + i * w, w,
                   out + (n - 1 - i) * inner, inner);
  }
}

std::vector<double> mirrored(const SbpOperator1D& op) {
  std::vector<double> out(op.closure_rows() * op.closure_width());
  for (std::size_t i = 0; i < op.closure_rows(); ++i)
    for (std::size_t j = 0; j < op.closure_width(); ++j)
      out[i * op.closure_width() + j] = -op.closure_coefficient(i, j);
  return out;
}

}  // namespace

AccuracyOrder accuracy(SbpOrder order) {
  return order == SbpOrder::second ? AccuracyOrder{2, 1} : AccuracyOrder{4, 2};
}

std::string to_string(SbpOrder order) {
  return order == SbpOrder::second ? "(2,1)" : "(4,2)";
}

SbpOrder parse_sbp_order(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') t += ch;
  }
  if (t == "2" || t == "2,1") return SbpOrder::second;
  if (t == "4" || t == "4,2") return SbpOrder::fourth;
  throw Error("unsupported SBP order '" + text + "' (expected 2 or 4)");
}

std::size_t minimum_nodes(SbpOrder order) {
  return order == SbpOrder::second ? 4 : 8;
}

SbpOperator1D build_sbp_operator(SbpOrder order, std::size_t n, double h,
                                 bool periodic) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("SBP spacing must be positive");
  if (n < minimum_nodes(order)) {
    throw Error("SBP " + to_string(order) + " needs at least " +
                std::to_string(minimum_nodes(order)) + " nodes, got " +
                std::to_string(n));
  }
  SbpOperator1D op;
  op.n_ = n;
  op.h_ = h;
  op.order_ = order;
  op.periodic_ = periodic;

  const double* q = nullptr;
  const double* wt = nullptr;
  if (order == SbpOrder::second) {
    op.interior_q_.assign(kInterior2.begin(), kInterior2.end());
    op.closure_rows_ = kW21.size();
    op.closure_width_ = kQ21.size() / kW21.size();
    q = kQ21.data();
    wt = kW21.data();
  } else {
    op.interior_q_.assign(kInterior4.begin(), kInterior4.end());
    op.closure_rows_ = kW42.size();
    op.closure_width_ = kQ42.size() / kW42.size();
    q = kQ42.data();
    wt = kW42.data();
  }
  for (double qk : op.interior_q_) op.interior_d_.push_back(qk / h);

  op.weights_.assign(n, h);
  op.selector_.assign(n, 0.0);
  if (periodic) return op;

  for (std::size_t i = 0; i < op.closure_rows_; ++i) {
    op.weights_[i] = wt[i] * h;
    op.weights_[n - 1 - i] = wt[i] * h;
  }
  op.selector_.front() = -1.0;
  op.selector_.back() = 1.0;
  op.closure_q_.assign(q, q + op.closure_rows_ * op.closure_width_);
  op.closure_d_.resize(op.closure_q_.size());
  for (std::size_t i = 0; i < op.closure_rows_; ++i)
    for (std::size_t j = 0; j < op.closure_width_; ++j)
      op.closure_d_[i * op.closure_width_ + j] =
          op.closure_q_[i * op.closure_width_ + j] / op.weights_[i];
  return op;
}

std::vector<double> SbpOperator1D::q_matrix() const {
  const std::size_t n = n_;
  std::vector<double> q(n * n, 0.0);
  const std::size_t r = interior_q_.size();
  const std::size_t m = closure_rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (!periodic_ && (i < m || i >= n - m)) continue;
    for (std::size_t k = 1; k <= r; ++k) {
      q[i * n + (i + k) % n] += interior_q_[k - 1];
      q[i * n + (i + n - k) % n] -= interior_q_[k - 1];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < closure_width_; ++j) {
      const double v = closure_q_[i * closure_width_ + j];
      q[i * n + j] = v;
      q[(n - 1 - i) * n + (n - 1 - j)] = -v;
    }
  }
  return q;
}

std::vector<double> SbpOperator1D::d_matrix() const {
  std::vector<double> d = q_matrix();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) d[i * n_ + j] /= weights_[i];
  return d;
}

void SbpOperator1D::apply(std::span<const double> in, std::span<double> out,
                          const kernels::KernelTable& k) const {
  if (in.size() != n_ || out.size() != n_) {
    throw ShapeError("SbpOperator1D::apply: line length mismatch");
  }
  const std::vector<double> right = mirrored(*this);
  apply_block(*this, right, in.data(), out.data(), LineGeometry{n_, 1}, k);
}

GridOperators::GridOperators(Grid grid, SbpOrder order,
                             const kernels::KernelTable& k)
    : grid_(std::move(grid)), order_(order), kernels_(&k) {
  for (int a = 0; a < grid_.dim(); ++a) {
    const Axis& ax = grid_.axis(a);
    ops_.push_back(build_sbp_operator(order, ax.n, ax.spacing(), ax.periodic));
  }
  node_weights_.resize(grid_.nodes());
  for (std::size_t node = 0; node < grid_.nodes(); ++node) {
    const auto idx = grid_.unflatten(node);
    double w = 1.0;
    for (int a = 0; a < grid_.dim(); ++a) w *= ops_[a].weights()[idx[a]];
    node_weights_[node] = w;
  }
}

std::vector<double> GridOperators::face_weights(const Face& face) const {
  const auto nodes = grid_.face_nodes(face);
  std::vector<double> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto idx = grid_.unflatten(nodes[i]);
    double w = 1.0;
    for (int a = 0; a < grid_.dim(); ++a) {
      if (a != face.axis) w *= ops_[a].weights()[idx[a]];
    }
    out[i] = w;
  }
  return out;
}

void apply_derivative_to(const GridOperators& go, int axis, std::size_t n_comp,
                         const double* in, double* out) {
  const Grid& g = go.grid();
  if (axis < 0 || axis >= g.dim()) throw ShapeError("derivative axis out of range");
  const SbpOperator1D& op = go.op(axis);
  const std::size_t n = op.size();
  const std::size_t inner = g.stride(axis);
  const std::size_t block = n * inner;
  const std::size_t outer = g.nodes() / block;
  const std::vector<double> right = mirrored(op);
  for (std::size_t c = 0; c < n_comp; ++c) {
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = c * g.nodes() + o * block;
      apply_block(op, right, in + base, out + base, LineGeometry{n, inner},
                  go.kernels());
    }
  }
}

StateField apply_derivative(const GridOperators& go, const StateField& field,
                            int axis) {
  if (field.nodes() != go.grid().nodes()) {
    throw ShapeError("apply_derivative: field does not match grid");
  }
  StateField out(field.n_comp(), field.nodes());
  apply_derivative_to(go, axis, field.n_comp(), field.data().data(),
                      out.data().data());
  return out;
}

double inner_product(const GridOperators& go, const StateField& u,
                     const StateField& v, const MatrixField* weight) {
  const std::size_t nodes = go.grid().nodes();
  if (u.nodes() != nodes || v.nodes() != nodes || u.n_comp() != v.n_comp()) {
    throw ShapeError("inner_product: shape mismatch");
  }
  const std::size_t nc = u.n_comp();
  const auto w = go.node_weights();
  double acc = 0.0;
  if (weight == nullptr) {
    for (std::size_t node = 0; node < nodes; ++node) {
      double local = 0.0;
      for (std::size_t c = 0; c < nc; ++c) local += u(c, node) * v(c, node);
      acc += w[node] * local;
    }
    return acc;
  }
  if (weight->n() != nc || weight->nodes() != nodes) {
    throw ShapeError("inner_product: weight shape mismatch");
  }
  for (std::size_t node = 0; node < nodes; ++node) {
    double local = 0.0;
    for (std::size_t r = 0; r < nc; ++r) {
      double row = 0.0;
      for (std::size_t s = 0; s < nc; ++s) {
        const double wrs = weight->at(r, s, node);
        const double wsr = weight->at(s, r, node);
        if (std::abs(wrs - wsr) > 1e-14 * (std::abs(wrs) + std::abs(wsr))) {
          throw Error("inner_product: weight is not symmetric");
        }
        row += wrs * v(s, node);
      }
      local += u(r, node) * row;
    }
    acc += w[node] * local;
  }
  return acc;
}

double quadrature_norm(const GridOperators& go, const double* data,
                       std::size_t n_comp) {
  const std::size_t nodes = go.grid().nodes();
  const auto w = go.node_weights();
  double acc = 0.0;
  for (std::size_t node = 0; node < nodes; ++node) {
    double local = 0.0;
    for (std::size_t c = 0; c < n_comp; ++c) {
      const double x = data[c * nodes + node];
      local += x * x;
    }
    acc += w[node] * local;
  }
  return std::sqrt(acc);
}

double boundary_quadrature(const GridOperators& go, const StateField& u,
                           const StateField& v, const Face& face) {
  const Grid& g = go.grid();
  if (face.axis < 0 || face.axis >= g.dim()) throw ShapeError("face out of range");
  if (u.nodes() != g.nodes() || v.nodes() != g.nodes() || u.n_comp() != v.n_comp()) {
    throw ShapeError("boundary_quadrature: shape mismatch");
  }
  if (g.axis(face.axis).periodic) return 0.0;
  const auto nodes = g.face_nodes(face);
  const auto fw = go.face_weights(face);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double local = 0.0;
    for (std::size_t c = 0; c < u.n_comp(); ++c)
      local += u(c, nodes[i]) * v(c, nodes[i]);
    acc += fw[i] * local;
  }
  return face.sign() * acc;
}

}  // namespace skewform
