#include "mscsim/gf/field.hpp"
#include "mscsim/gf/kernels.hpp"

namespace mscsim::gf::detail {
namespace {

void scalar_add(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void scalar_scale(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  if (c == 0) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = 0;
    return;
  }
  const unsigned lc = kTables.log[c];
  for (std::size_t i = 0; i < n; ++i) {
    if (dst[i] != 0) dst[i] = kTables.exp[kTables.log[dst[i]] + lc];
  }
}

void scalar_mul_add(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    scalar_add(dst, src, n);
    return;
  }
  const unsigned lc = kTables.log[c];
  for (std::size_t i = 0; i < n; ++i) {
    if (src[i] != 0) dst[i] ^= kTables.exp[kTables.log[src[i]] + lc];
  }
}

}  // namespace

const KernelSet& scalar_kernels() noexcept {
  static constexpr KernelSet k{Isa::Scalar, scalar_add, scalar_scale, scalar_mul_add};
  return k;
}

NibbleTables nibble_tables(std::uint8_t c) noexcept {
  NibbleTables t{};
  for (unsigned x = 0; x < 16; ++x) {
    t.lo[x] = mul(c, static_cast<std::uint8_t>(x));
    t.hi[x] = mul(c, static_cast<std::uint8_t>(x << 4));
  }
  return t;
}

}  // namespace mscsim::gf::detail
