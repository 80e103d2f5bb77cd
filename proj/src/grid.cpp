#include "skewform/grid.hpp"

#include <algorithm>
#include <cmath>

#include "skewform/error.hpp"

namespace skewform {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 3) {
    throw ShapeError("grid dimension must be 1, 2 or 3");
  }
  nodes_ = 1;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& ax = axes_[a];
    if (ax.n < 2) throw ShapeError("every axis needs at least 2 nodes");
    if (!(ax.max > ax.min)) throw ShapeError("axis extent must satisfy max > min");
    extents_[a] = ax.n;
    nodes_ *= ax.n;
  }
}

std::array<std::size_t, 3> Grid::unflatten(std::size_t node) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = node % extents_[a];
    node /= extents_[a];
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, 3>& idx) const {
  std::size_t node = 0;
  for (int a = 0; a < dim(); ++a) node = node * extents_[a] + idx[a];
  return node;
}

Position Grid::position(std::size_t node) const {
  const auto idx = unflatten(node);
  Position p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) p[a] = axes_[a].coordinate(idx[a]);
  return p;
}

std::vector<Face> Grid::faces() const {
  std::vector<Face> out;
  for (int a = 0; a < dim(); ++a) {
    if (axes_[a].periodic) continue;
    out.push_back(Face{a, Side::low});
    out.push_back(Face{a, Side::high});
  }
  return out;
}

std::vector<std::size_t> Grid::face_nodes(const Face& face) const {
  if (face.axis < 0 || face.axis >= dim()) throw ShapeError("face axis out of range");
  const std::size_t fixed =
      face.side == Side::low ? 0 : axes_[face.axis].n - 1;
  std::vector<std::size_t> out;
  out.reserve(nodes_ / extents_[face.axis]);
  for (std::size_t node = 0; node < nodes_; ++node) {
    if (unflatten(node)[face.axis] == fixed) out.push_back(node);
  }
  return out;
}

std::size_t Grid::stride(int axis) const {
  std::size_t s = 1;
  for (int a = axis + 1; a < dim(); ++a) s *= extents_[a];
  return s;
}

bool Grid::operator==(const Grid& other) const {
  if (axes_.size() != other.axes_.size()) return false;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& x = axes_[a];
    const Axis& y = other.axes_[a];
    if (x.n != y.n || x.min != y.min || x.max != y.max || x.periodic != y.periodic)
      return false;
  }
  return true;
}

bool StateField::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

StateField linear_combination(double a, const StateField& x, double b,
                              const StateField& y) {
  if (x.n_comp() != y.n_comp() || x.nodes() != y.nodes()) {
    throw ShapeError("linear_combination: shape mismatch");
  }
  StateField out(x.n_comp(), x.nodes());
  auto o = out.data();
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * xs[i] + b * ys[i];
  return out;
}

double max_abs(const StateField& f) {
  double m = 0.0;
  for (double v : f.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace skewform
