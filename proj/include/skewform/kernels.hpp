#pragma once

// Data-parallel inner loops shared by the derivative and coefficient
// operators. Every instruction set provides the same table; the vector
// variants evaluate exactly the scalar expression tree (no FMA, same
// accumulation order) so results are bitwise identical across variants.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace skewform::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  const char* name;

  /// out[j] = sum_k coeff[k] * (hi[k][j] - lo[k][j]), k ascending.
  void (*central_difference)(const double* const* hi, const double* const* lo,
                             const double* coeff, std::size_t radius,
                             double* out, std::size_t len);

  /// out[j] = sum_k coeff[k] * rows[k][j], k ascending.
  void (*weighted_sum)(const double* const* rows, const double* coeff,
                       std::size_t nterms, double* out, std::size_t len);

  /// out[j] += a[j] * b[j]
  void (*multiply_add)(const double* a, const double* b, double* out,
                       std::size_t len);

  /// out[j] -= a[j] * b[j]
  void (*multiply_subtract)(const double* a, const double* b, double* out,
                            std::size_t len);

  /// out[j] += x[j]
  void (*add)(const double* x, double* out, std::size_t len);

  /// out[j] -= x[j]
  void (*subtract)(const double* x, double* out, std::size_t len);
};

const KernelTable& scalar_kernels();

/// Instruction sets compiled in and supported by the running CPU.
std::vector<Isa> available_isas();

/// Kernel table for `isa`; throws skewform::Error when unavailable.
const KernelTable& kernels_for(Isa isa);

/// Best available table, unless SKEWFORM_SIMD names another available one.
/// Resolved once per process.
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

}  // namespace skewform::kernels
