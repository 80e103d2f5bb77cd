#pragma once

#include "skewform/kernels.hpp"

namespace skewform::kernels::detail {

extern const KernelTable scalar_table;

#if defined(__x86_64__) || defined(_M_X64)
#define SKEWFORM_HAVE_AVX2_KERNELS 1
extern const KernelTable avx2_table;
#endif

#if defined(__aarch64__)
#define SKEWFORM_HAVE_NEON_KERNELS 1
extern const KernelTable neon_table;
#endif

}  // namespace skewform::kernels::detail
