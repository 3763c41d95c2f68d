#include <tmmintrin.h>

#include "mscsim/gf/kernels.hpp"

namespace mscsim::gf::detail {
namespace {

void ssse3_add(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_xor_si128(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline __m128i product(__m128i v, __m128i lo, __m128i hi, __m128i mask) {
  __m128i l = _mm_and_si128(v, mask);
  __m128i h = _mm_and_si128(_mm_srli_epi64(v, 4), mask);
  return _mm_xor_si128(_mm_shuffle_epi8(lo, l), _mm_shuffle_epi8(hi, h));
}

void ssse3_scale(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  const NibbleTables t = nibble_tables(c);
  const __m128i lo = _mm_load_si128(reinterpret_cast<const __m128i*>(t.lo));
  const __m128i hi = _mm_load_si128(reinterpret_cast<const __m128i*>(t.hi));
  const __m128i mask = _mm_set1_epi8(0x0f);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), product(d, lo, hi, mask));
  }
  for (; i < n; ++i) dst[i] = static_cast<std::uint8_t>(t.lo[dst[i] & 0x0f] ^ t.hi[dst[i] >> 4]);
}

void ssse3_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    ssse3_add(dst, src, n);
    return;
  }
  const NibbleTables t = nibble_tables(c);
  const __m128i lo = _mm_load_si128(reinterpret_cast<const __m128i*>(t.lo));
  const __m128i hi = _mm_load_si128(reinterpret_cast<const __m128i*>(t.hi));
  const __m128i mask = _mm_set1_epi8(0x0f);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_xor_si128(d, product(s, lo, hi, mask)));
  }
  for (; i < n; ++i) dst[i] ^= static_cast<std::uint8_t>(t.lo[src[i] & 0x0f] ^ t.hi[src[i] >> 4]);
}

}  // namespace

const KernelSet& ssse3_kernels() noexcept {
  static constexpr KernelSet k{Isa::Ssse3, ssse3_add, ssse3_scale, ssse3_mul_add};
  return k;
}

}  // namespace mscsim::gf::detail
