#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace skewform {

/// Dense square matrix of order at most 4, row-major in a fixed buffer.
struct SmallMatrix {
  static constexpr int kMax = 4;

  int n = 0;
  std::array<double, kMax * kMax> v{};

  SmallMatrix() = default;
  explicit SmallMatrix(int order) : n(order) {}

  double& operator()(int i, int j) { return v[i * kMax + j]; }
  double operator()(int i, int j) const { return v[i * kMax + j]; }

  static SmallMatrix identity(int order) {
    SmallMatrix m(order);
    for (int i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
  }

  SmallMatrix transposed() const {
    SmallMatrix t(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  /// (M + M^T) / 2
  SmallMatrix symmetric_part() const {
    SmallMatrix s(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return s;
  }

  /// x^T M y
  double bilinear(std::span<const double> x, std::span<const double> y) const {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += (*this)(i, j) * y[j];
      acc += x[i] * row;
    }
    return acc;
  }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double a = (*this)(i, j) < 0 ? -(*this)(i, j) : (*this)(i, j);
        if (a > m) m = a;
      }
    return m;
  }

  bool is_symmetric(double tol = 0.0) const {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double d = (*this)(i, j) - (*this)(j, i);
        if (d > tol || -d > tol) return false;
      }
    return true;
  }
};

inline SmallMatrix operator+(const SmallMatrix& a, const SmallMatrix& b) {
  SmallMatrix c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline SmallMatrix operator*(double s, const SmallMatrix& a) {
  SmallMatrix c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) c(i, j) = s * a(i, j);
  return c;
}

}  // namespace skewform
