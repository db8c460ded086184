#include <stdexcept>
#include <string>

#include "orni/kernels.hpp"

namespace orni::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

StripLoadsFn kernel_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("strip-load kernel '" + std::string(to_string(isa)) +
                                "' is not available on this CPU");
  }
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return &strip_loads_avx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return &strip_loads_neon;
#endif
    default: return &strip_loads_scalar;
  }
}

Isa active_isa() {
  static const Isa isa = [] {
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    if (isa_supported(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return isa;
}

}  // namespace orni::kernels
