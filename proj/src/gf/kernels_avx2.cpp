#include <immintrin.h>

#include "mscsim/gf/kernels.hpp"

namespace mscsim::gf::detail {
namespace {

void avx2_add(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

struct Lanes {
  __m256i lo;
  __m256i hi;
  __m256i mask;
};

inline Lanes load_lanes(const NibbleTables& t) {
  return {_mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(t.lo))),
          _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(t.hi))),
          _mm256_set1_epi8(0x0f)};
}

// vpshufb looks up within each 128-bit lane, so both lanes carry the same table.
inline __m256i product(__m256i v, const Lanes& k) {
  __m256i l = _mm256_and_si256(v, k.mask);
  __m256i h = _mm256_and_si256(_mm256_srli_epi64(v, 4), k.mask);
  return _mm256_xor_si256(_mm256_shuffle_epi8(k.lo, l), _mm256_shuffle_epi8(k.hi, h));
}

void avx2_scale(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  const NibbleTables t = nibble_tables(c);
  const Lanes k = load_lanes(t);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), product(d, k));
  }
  for (; i < n; ++i) dst[i] = static_cast<std::uint8_t>(t.lo[dst[i] & 0x0f] ^ t.hi[dst[i] >> 4]);
}

void avx2_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    avx2_add(dst, src, n);
    return;
  }
  const NibbleTables t = nibble_tables(c);
  const Lanes k = load_lanes(t);
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    __m256i s0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i s1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 32));
    __m256i d0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i d1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 32));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d0, product(s0, k)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 32), _mm256_xor_si256(d1, product(s1, k)));
  }
  for (; i + 32 <= n; i += 32) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, product(s, k)));
  }
  for (; i < n; ++i) dst[i] ^= static_cast<std::uint8_t>(t.lo[src[i] & 0x0f] ^ t.hi[src[i] >> 4]);
}

}  // namespace

const KernelSet& avx2_kernels() noexcept {
  static constexpr KernelSet k{Isa::Avx2, avx2_add, avx2_scale, avx2_mul_add};
  return k;
}

}  // namespace mscsim::gf::detail
