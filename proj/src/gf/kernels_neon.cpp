#include <arm_neon.h>

#include "mscsim/gf/kernels.hpp"

namespace mscsim::gf::detail {
namespace {

void neon_add(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, veorq_u8(vld1q_u8(dst + i), vld1q_u8(src + i)));
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline uint8x16_t product(uint8x16_t v, uint8x16_t lo, uint8x16_t hi, uint8x16_t mask) {
  return veorq_u8(vqtbl1q_u8(lo, vandq_u8(v, mask)), vqtbl1q_u8(hi, vshrq_n_u8(v, 4)));
}

void neon_scale(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  const NibbleTables t = nibble_tables(c);
  const uint8x16_t lo = vld1q_u8(t.lo);
  const uint8x16_t hi = vld1q_u8(t.hi);
  const uint8x16_t mask = vdupq_n_u8(0x0f);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, product(vld1q_u8(dst + i), lo, hi, mask));
  for (; i < n; ++i) dst[i] = static_cast<std::uint8_t>(t.lo[dst[i] & 0x0f] ^ t.hi[dst[i] >> 4]);
}

void neon_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    neon_add(dst, src, n);
    return;
  }
  const NibbleTables t = nibble_tables(c);
  const uint8x16_t lo = vld1q_u8(t.lo);
  const uint8x16_t hi = vld1q_u8(t.hi);
  const uint8x16_t mask = vdupq_n_u8(0x0f);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    vst1q_u8(dst + i, veorq_u8(vld1q_u8(dst + i), product(vld1q_u8(src + i), lo, hi, mask)));
  }
  for (; i < n; ++i) dst[i] ^= static_cast<std::uint8_t>(t.lo[src[i] & 0x0f] ^ t.hi[src[i] >> 4]);
}

}  // namespace

const KernelSet& neon_kernels() noexcept {
  static constexpr KernelSet k{Isa::Neon, neon_add, neon_scale, neon_mul_add};
  return k;
}

}  // namespace mscsim::gf::detail
