#pragma once

// Region kernels over GF(2^8) byte buffers.
//
// Every ISA variant implements the same three operations and must produce
// byte-identical results to the scalar log/antilog reference. The best
// variant the running CPU supports is picked once on first use.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mscsim::gf {

enum class Isa { Scalar, Ssse3, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelSet {
  Isa isa;
  // dst[i] ^= src[i]
  void (*add)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
  // dst[i] = c * dst[i]
  void (*scale)(std::uint8_t* dst, std::uint8_t c, std::size_t n);
  // dst[i] ^= c * src[i]
  void (*mul_add)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
};

/// True when the variant was compiled in and the CPU can execute it.
bool isa_available(Isa isa) noexcept;

/// All runnable variants, scalar first.
std::vector<Isa> available_isas();

/// Throws std::invalid_argument if the variant is not runnable here.
const KernelSet& kernels_for(Isa isa);

/// Fastest runnable variant. Immutable after the first call.
const KernelSet& active_kernels() noexcept;

inline void region_add(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                       const KernelSet& k = active_kernels()) {
  if (dst.size() != src.size()) throw std::invalid_argument("region_add: length mismatch");
  k.add(dst.data(), src.data(), dst.size());
}

inline void region_scale(std::span<std::uint8_t> dst, std::uint8_t c,
                         const KernelSet& k = active_kernels()) {
  k.scale(dst.data(), c, dst.size());
}

inline void region_mul_add(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                           std::uint8_t c, const KernelSet& k = active_kernels()) {
  if (dst.size() != src.size()) throw std::invalid_argument("region_mul_add: length mismatch");
  k.mul_add(dst.data(), src.data(), c, dst.size());
}

namespace detail {
const KernelSet& scalar_kernels() noexcept;
#if defined(MSCSIM_HAVE_X86_KERNELS)
const KernelSet& ssse3_kernels() noexcept;
const KernelSet& avx2_kernels() noexcept;
#endif
#if defined(MSCSIM_HAVE_NEON_KERNELS)
const KernelSet& neon_kernels() noexcept;
#endif

// Split-nibble product tables used by the shuffle-based variants:
// lo[x] = c*x and hi[x] = c*(x<<4) for x in [0,16).
struct NibbleTables {
  alignas(16) std::uint8_t lo[16];
  alignas(16) std::uint8_t hi[16];
};
NibbleTables nibble_tables(std::uint8_t c) noexcept;
}  // namespace detail

}  // namespace mscsim::gf
