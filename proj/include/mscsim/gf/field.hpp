#pragma once

// GF(2^8) arithmetic over the reduction polynomial x^8+x^4+x^3+x^2+1 (0x11D).
//
// Multiplication and inversion go through log/antilog tables built at compile
// time. The element 0x02 generates the multiplicative group for 0x11D, so
// exp[i] = 2^i covers all 255 nonzero elements.

#include <array>
#include <cstdint>
#include <stdexcept>

namespace mscsim::gf {

inline constexpr unsigned kReductionPolynomial = 0x11D;
inline constexpr unsigned kFieldOrder = 256;

namespace detail {

struct LogTables {
  // exp is doubled so exp[log a + log b] never needs a modulo.
  std::array<std::uint8_t, 512> exp{};
  std::array<std::uint8_t, 256> log{};
};

constexpr LogTables make_log_tables() {
  LogTables t{};
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.log[x] = static_cast<std::uint8_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= kReductionPolynomial;
  }
  for (unsigned i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  return t;
}

inline constexpr LogTables kTables = make_log_tables();

}  // namespace detail

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) noexcept {
  return static_cast<std::uint8_t>(a ^ b);
}

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return detail::kTables.exp[detail::kTables.log[a] + detail::kTables.log[b]];
}

constexpr std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw std::domain_error("gf256: zero has no multiplicative inverse");
  return detail::kTables.exp[255 - detail::kTables.log[a]];
}

constexpr std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw std::domain_error("gf256: division by zero");
  if (a == 0) return 0;
  return detail::kTables.exp[detail::kTables.log[a] + 255 - detail::kTables.log[b]];
}

/// An element of GF(2^8). Addition is XOR; multiplication is reduced mod 0x11D.
class FieldElement {
 public:
  constexpr FieldElement() noexcept = default;
  constexpr explicit FieldElement(std::uint8_t v) noexcept : value_{v} {}

  constexpr std::uint8_t value() const noexcept { return value_; }
  constexpr bool is_zero() const noexcept { return value_ == 0; }

  constexpr FieldElement inverse() const { return FieldElement{gf::inv(value_)}; }

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) noexcept {
    return FieldElement{gf::add(a.value_, b.value_)};
  }
  // Characteristic 2: subtraction is addition.
  friend constexpr FieldElement operator-(FieldElement a, FieldElement b) noexcept { return a + b; }
  friend constexpr FieldElement operator*(FieldElement a, FieldElement b) noexcept {
    return FieldElement{gf::mul(a.value_, b.value_)};
  }
  friend constexpr FieldElement operator/(FieldElement a, FieldElement b) {
    return FieldElement{gf::div(a.value_, b.value_)};
  }
  constexpr FieldElement& operator+=(FieldElement o) noexcept { return *this = *this + o; }
  constexpr FieldElement& operator*=(FieldElement o) noexcept { return *this = *this * o; }

  friend constexpr bool operator==(FieldElement, FieldElement) noexcept = default;

 private:
  std::uint8_t value_ = 0;
};

constexpr FieldElement gf_add(FieldElement a, FieldElement b) noexcept { return a + b; }
constexpr FieldElement gf_mul(FieldElement a, FieldElement b) noexcept { return a * b; }
constexpr FieldElement gf_inv(FieldElement a) { return a.inverse(); }

}  // namespace mscsim::gf
