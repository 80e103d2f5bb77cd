#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace skewform {

using Position = std::array<double, 3>;

/// One uniform axis. A periodic axis has n distinct nodes with spacing
/// (max - min) / n; the point `max` is identified with `min`.
struct Axis {
  std::size_t n = 0;
  double min = 0.0;
  double max = 1.0;
  bool periodic = false;

  double spacing() const {
    return periodic ? (max - min) / static_cast<double>(n)
                    : (max - min) / static_cast<double>(n - 1);
  }
  double coordinate(std::size_t i) const {
    return min + static_cast<double>(i) * spacing();
  }
};

enum class Side { low, high };

struct Face {
  int axis = 0;
  Side side = Side::low;

  /// Outward normal component along `axis`.
  double sign() const { return side == Side::high ? 1.0 : -1.0; }
  /// Faces are numbered 2*axis + (high ? 1 : 0).
  int id() const { return 2 * axis + (side == Side::high ? 1 : 0); }
  static Face from_id(int id) {
    return Face{id / 2, id % 2 == 1 ? Side::high : Side::low};
  }
  bool operator==(const Face&) const = default;
};

/// Structured tensor-product grid of dimension 1 to 3. Node numbering is
/// lexicographic with the last axis varying fastest.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_.at(static_cast<std::size_t>(a)); }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t nodes() const { return nodes_; }

  /// Node counts padded with 1 up to three axes.
  const std::array<std::size_t, 3>& extents() const { return extents_; }

  std::array<std::size_t, 3> unflatten(std::size_t node) const;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const;
  Position position(std::size_t node) const;

  std::vector<Face> faces() const;
  /// Node indices on `face`, in lexicographic order.
  std::vector<std::size_t> face_nodes(const Face& face) const;

  /// Product of node counts of the axes after `axis` (the line stride).
  std::size_t stride(int axis) const;

  bool operator==(const Grid& other) const;

 private:
  std::vector<Axis> axes_;
  std::array<std::size_t, 3> extents_{1, 1, 1};
  std::size_t nodes_ = 0;
};

/// Multi-component nodal field. Component-major; within a component the
/// nodes follow Grid numbering.
class StateField {
 public:
  StateField() = default;
  StateField(std::size_t n_comp, std::size_t nodes, double value = 0.0)
      : n_comp_(n_comp), nodes_(nodes), data_(n_comp * nodes, value) {}

  std::size_t n_comp() const { return n_comp_; }
  std::size_t nodes() const { return nodes_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<double> component(std::size_t c) {
    return std::span<double>(data_).subspan(c * nodes_, nodes_);
  }
  std::span<const double> component(std::size_t c) const {
    return std::span<const double>(data_).subspan(c * nodes_, nodes_);
  }

  double& operator()(std::size_t c, std::size_t node) {
    return data_[c * nodes_ + node];
  }
  double operator()(std::size_t c, std::size_t node) const {
    return data_[c * nodes_ + node];
  }

  /// Copies the components at `node` into `out` (size n_comp).
  void gather(std::size_t node, std::span<double> out) const {
    for (std::size_t c = 0; c < n_comp_; ++c) out[c] = data_[c * nodes_ + node];
  }

  bool all_finite() const;
  bool operator==(const StateField&) const = default;

 private:
  std::size_t n_comp_ = 0;
  std::size_t nodes_ = 0;
  std::vector<double> data_;
};

/// a*x + b*y, entrywise.
StateField linear_combination(double a, const StateField& x, double b,
                              const StateField& y);

double max_abs(const StateField& f);

}  // namespace skewform
