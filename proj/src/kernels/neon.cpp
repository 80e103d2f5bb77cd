#include "tables.hpp"

#if defined(SKEWFORM_HAVE_NEON_KERNELS)

#include <arm_neon.h>

namespace skewform::kernels::detail {
namespace {

void central_difference(const double* const* hi, const double* const* lo,
                        const double* coeff, std::size_t radius, double* out,
                        std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    float64x2_t acc = vmulq_f64(vdupq_n_f64(coeff[0]),
                                vsubq_f64(vld1q_f64(hi[0] + j), vld1q_f64(lo[0] + j)));
    for (std::size_t k = 1; k < radius; ++k) {
      const float64x2_t diff = vsubq_f64(vld1q_f64(hi[k] + j), vld1q_f64(lo[k] + j));
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(coeff[k]), diff));
    }
    vst1q_f64(out + j, acc);
  }
  for (; j < len; ++j) {
    double acc = coeff[0] * (hi[0][j] - lo[0][j]);
    for (std::size_t k = 1; k < radius; ++k) {
      acc = acc + coeff[k] * (hi[k][j] - lo[k][j]);
    }
    out[j] = acc;
  }
}

void weighted_sum(const double* const* rows, const double* coeff,
                  std::size_t nterms, double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    float64x2_t acc = vmulq_f64(vdupq_n_f64(coeff[0]), vld1q_f64(rows[0] + j));
    for (std::size_t k = 1; k < nterms; ++k) {
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(coeff[k]), vld1q_f64(rows[k] + j)));
    }
    vst1q_f64(out + j, acc);
  }
  for (; j < len; ++j) {
    double acc = coeff[0] * rows[0][j];
    for (std::size_t k = 1; k < nterms; ++k) acc = acc + coeff[k] * rows[k][j];
    out[j] = acc;
  }
}

void multiply_add(const double* a, const double* b, double* out,
                  std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(a + j), vld1q_f64(b + j));
    vst1q_f64(out + j, vaddq_f64(vld1q_f64(out + j), prod));
  }
  for (; j < len; ++j) out[j] = out[j] + a[j] * b[j];
}

void multiply_subtract(const double* a, const double* b, double* out,
                       std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(a + j), vld1q_f64(b + j));
    vst1q_f64(out + j, vsubq_f64(vld1q_f64(out + j), prod));
  }
  for (; j < len; ++j) out[j] = out[j] - a[j] * b[j];
}

void add(const double* x, double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    vst1q_f64(out + j, vaddq_f64(vld1q_f64(out + j), vld1q_f64(x + j)));
  }
  for (; j < len; ++j) out[j] = out[j] + x[j];
}

void subtract(const double* x, double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    vst1q_f64(out + j, vsubq_f64(vld1q_f64(out + j), vld1q_f64(x + j)));
  }
  for (; j < len; ++j) out[j] = out[j] - x[j];
}

}  // namespace

const KernelTable neon_table{
    Isa::neon,    "neon", central_difference, weighted_sum,
    multiply_add, multiply_subtract, add, subtract,
};

}  // namespace skewform::kernels::detail

#endif
