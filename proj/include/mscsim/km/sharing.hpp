#pragma once

// Shamir sharing of the master private key over Z_q.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mscsim/km/group.hpp"

namespace mscsim::km {

using ShareIndex = std::uint32_t;

struct KMConfig {
  std::size_t n = 5;  // initial shareholders
  std::size_t t = 3;  // threshold

  /// Throws std::invalid_argument unless 1 <= t <= n.
  void validate() const;
  friend bool operator==(const KMConfig&, const KMConfig&) = default;
};

struct KeyShare {
  ShareIndex index = 0;
  BigInt value;

  friend bool operator==(const KeyShare&, const KeyShare&) = default;
};

struct MasterKeyPair {
  BigInt secret;
  BigInt public_key;
};

struct Dealing {
  MasterKeyPair master;
  std::vector<KeyShare> shares;
};

/// Random degree t-1 polynomial with a random nonzero constant term, shares at
/// x = 1..n. The caller is expected to drop master.secret once shares are out.
Dealing setup(const KMConfig& config, const GroupParams& params, sim::RandomStream& rng);

/// Deterministic dealing: coefficients[0] is the secret. Throws
/// std::invalid_argument on zero or duplicate indices (mod q).
Dealing deal_polynomial(const GroupParams& params, std::span<const BigInt> coefficients,
                        std::span<const ShareIndex> indices);

BigInt evaluate_polynomial(std::span<const BigInt> coefficients, const BigInt& x, const BigInt& q);

/// lambda_i(at) = prod_{j != i} (at - x_j) / (x_i - x_j) mod q.
BigInt lagrange_coefficient(std::span<const ShareIndex> indices, ShareIndex i, const BigInt& at,
                            const BigInt& q);

/// Value of the interpolating polynomial at `at`. Throws on duplicate indices.
BigInt interpolate(std::span<const KeyShare> shares, const BigInt& at, const BigInt& q);

}  // namespace mscsim::km
