#pragma once

// Prime-order subgroup of Z_p^* used by every key-management primitive.
//
// Educational-grade cryptography: no constant-time arithmetic, no side-channel
// hardening. Good enough to exercise the protocol logic, nothing more.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "mscsim/km/bytes.hpp"
#include "mscsim/sim/random.hpp"

namespace mscsim::km {

struct GroupParams {
  BigInt p;
  BigInt q;
  BigInt g;

  /// p = 23, q = 11, g = 2. Small enough for exhaustive tests.
  static GroupParams toy();
  /// 2048-bit p with a 256-bit q.
  static GroupParams builtin();

  /// Throws std::invalid_argument unless p and q are prime, q | p-1, g != 1
  /// and g^q = 1 mod p.
  void validate() const;

  std::size_t element_bytes() const;
  std::size_t scalar_bytes() const;

  BigInt exp(const BigInt& e) const;                        // g^e mod p
  BigInt pow(const BigInt& base, const BigInt& e) const;    // base^e mod p
  BigInt mul(const BigInt& a, const BigInt& b) const;       // a*b mod p
  /// 1 < y < p and y lies in the order-q subgroup.
  bool is_element(const BigInt& y) const;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// Text format: one "name = hex" line each for p, q and g. Blank lines and
/// lines starting with '#' are ignored. Throws std::invalid_argument on
/// anything else, then validates the group.
GroupParams parse_group_params(std::string_view text);
GroupParams load_group_params(const std::filesystem::path& path);
std::string format_group_params(const GroupParams& params);

/// Non-negative residue.
BigInt mod(const BigInt& a, const BigInt& m);
/// Inverse modulo the prime q. Throws std::domain_error on zero.
BigInt inverse_mod_prime(const BigInt& a, const BigInt& q);
/// Uniform in [1, q-1].
BigInt random_scalar(const GroupParams& params, sim::RandomStream& rng);

struct KeyPair {
  BigInt secret;
  BigInt public_key;

  static KeyPair generate(const GroupParams& params, sim::RandomStream& rng);
};

}  // namespace mscsim::km
