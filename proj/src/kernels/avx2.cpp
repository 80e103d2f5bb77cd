#include "tables.hpp"

#if defined(SKEWFORM_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define SKEWFORM_AVX2 __attribute__((target("avx2")))

namespace skewform::kernels::detail {
namespace {

// Each lane follows the scalar expression tree; tails fall back to the
// same scalar expressions.

SKEWFORM_AVX2 void central_difference(const double* const* hi,
                                      const double* const* lo,
                                      const double* coeff, std::size_t radius,
                                      double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    __m256d acc = _mm256_mul_pd(
        _mm256_set1_pd(coeff[0]),
        _mm256_sub_pd(_mm256_loadu_pd(hi[0] + j), _mm256_loadu_pd(lo[0] + j)));
    for (std::size_t k = 1; k < radius; ++k) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(hi[k] + j),
                                         _mm256_loadu_pd(lo[k] + j));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coeff[k]), diff));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < len; ++j) {
    double acc = coeff[0] * (hi[0][j] - lo[0][j]);
    for (std::size_t k = 1; k < radius; ++k) {
      acc = acc + coeff[k] * (hi[k][j] - lo[k][j]);
    }
    out[j] = acc;
  }
}

SKEWFORM_AVX2 void weighted_sum(const double* const* rows, const double* coeff,
                                std::size_t nterms, double* out,
                                std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    __m256d acc =
        _mm256_mul_pd(_mm256_set1_pd(coeff[0]), _mm256_loadu_pd(rows[0] + j));
    for (std::size_t k = 1; k < nterms; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coeff[k]),
                                             _mm256_loadu_pd(rows[k] + j)));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < len; ++j) {
    double acc = coeff[0] * rows[0][j];
    for (std::size_t k = 1; k < nterms; ++k) acc = acc + coeff[k] * rows[k][j];
    out[j] = acc;
  }
}

SKEWFORM_AVX2 void multiply_add(const double* a, const double* b, double* out,
                                std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
    _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j), prod));
  }
  for (; j < len; ++j) out[j] = out[j] + a[j] * b[j];
}

SKEWFORM_AVX2 void multiply_subtract(const double* a, const double* b,
                                     double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
    _mm256_storeu_pd(out + j, _mm256_sub_pd(_mm256_loadu_pd(out + j), prod));
  }
  for (; j < len; ++j) out[j] = out[j] - a[j] * b[j];
}

SKEWFORM_AVX2 void add(const double* x, double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j),
                                            _mm256_loadu_pd(x + j)));
  }
  for (; j < len; ++j) out[j] = out[j] + x[j];
}

SKEWFORM_AVX2 void subtract(const double* x, double* out, std::size_t len) {
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    _mm256_storeu_pd(out + j, _mm256_sub_pd(_mm256_loadu_pd(out + j),
                                            _mm256_loadu_pd(x + j)));
  }
  for (; j < len; ++j) out[j] = out[j] - x[j];
}

}  // namespace

const KernelTable avx2_table{
    Isa::avx2,    "avx2", central_difference, weighted_sum,
    multiply_add, multiply_subtract, add, subtract,
};

}  // namespace skewform::kernels::detail

#endif
