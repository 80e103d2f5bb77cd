#include "tables.hpp"

namespace skewform::kernels::detail {
namespace {

void central_difference(const double* const* hi, const double* const* lo,
                        const double* coeff, std::size_t radius, double* out,
                        std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) {
    double acc = coeff[0] * (hi[0][j] - lo[0][j]);
    for (std::size_t k = 1; k < radius; ++k) {
      acc = acc + coeff[k] * (hi[k][j] - lo[k][j]);
    }
    out[j] = acc;
  }
}

void weighted_sum(const double* const* rows, const double* coeff,
                  std::size_t nterms, double* out, std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) {
    double acc = coeff[0] * rows[0][j];
    for (std::size_t k = 1; k < nterms; ++k) {
      acc = acc + coeff[k] * rows[k][j];
    }
    out[j] = acc;
  }
}

void multiply_add(const double* a, const double* b, double* out,
                  std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out[j] = out[j] + a[j] * b[j];
}

void multiply_subtract(const double* a, const double* b, double* out,
                       std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out[j] = out[j] - a[j] * b[j];
}

void add(const double* x, double* out, std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out[j] = out[j] + x[j];
}

void subtract(const double* x, double* out, std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out[j] = out[j] - x[j];
}

}  // namespace

const KernelTable scalar_table{
    Isa::scalar,  "scalar", central_difference, weighted_sum,
    multiply_add, multiply_subtract, add, subtract,
};

}  // namespace skewform::kernels::detail
