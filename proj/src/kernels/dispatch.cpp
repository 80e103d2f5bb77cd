#include <cstdlib>
#include <string>

#include "skewform/error.hpp"
#include "tables.hpp"

namespace skewform::kernels {
namespace {

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SKEWFORM_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SKEWFORM_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& resolve_active() {
  if (const char* env = std::getenv("SKEWFORM_SIMD")) {
    const std::string want(env);
    for (Isa isa : available_isas()) {
      if (want == isa_name(isa)) return kernels_for(isa);
    }
  }
  return kernels_for(available_isas().back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() { return detail::scalar_table; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (supported(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!supported(isa)) {
    throw Error("kernel set '" + std::string(isa_name(isa)) +
                "' is not available on this machine");
  }
  switch (isa) {
#if defined(SKEWFORM_HAVE_AVX2_KERNELS)
    case Isa::avx2:
      return detail::avx2_table;
#endif
#if defined(SKEWFORM_HAVE_NEON_KERNELS)
    case Isa::neon:
      return detail::neon_table;
#endif
    default:
      return detail::scalar_table;
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve_active();
  return table;
}

}  // namespace skewform::kernels
