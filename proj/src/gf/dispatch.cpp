#include <string>

#include "mscsim/gf/kernels.hpp"

namespace mscsim::gf {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Ssse3: return "ssse3";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Ssse3:
#if defined(MSCSIM_HAVE_X86_KERNELS)
      return __builtin_cpu_supports("ssse3");
#else
      return false;
#endif
    case Isa::Avx2:
#if defined(MSCSIM_HAVE_X86_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(MSCSIM_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Ssse3, Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelSet& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("gf kernels: " + std::string(to_string(isa)) + " not available on this host");
  }
  switch (isa) {
#if defined(MSCSIM_HAVE_X86_KERNELS)
    case Isa::Ssse3: return detail::ssse3_kernels();
    case Isa::Avx2: return detail::avx2_kernels();
#endif
#if defined(MSCSIM_HAVE_NEON_KERNELS)
    case Isa::Neon: return detail::neon_kernels();
#endif
    default: return detail::scalar_kernels();
  }
}

const KernelSet& active_kernels() noexcept {
  static const KernelSet& selected = [] () -> const KernelSet& {
    for (Isa isa : {Isa::Avx2, Isa::Neon, Isa::Ssse3}) {
      if (isa_available(isa)) return kernels_for(isa);
    }
    return detail::scalar_kernels();
  }();
  return selected;
}

}  // namespace mscsim::gf
