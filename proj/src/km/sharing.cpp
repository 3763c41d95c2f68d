#include "mscsim/km/sharing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mscsim::km {
namespace {

void check_indices(std::span<const ShareIndex> indices, const BigInt& q) {
  std::vector<BigInt> seen;
  for (ShareIndex x : indices) {
    const BigInt r = mod(BigInt(x), q);
    if (r == 0) throw std::invalid_argument("share index " + std::to_string(x) + " is zero mod q");
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) {
      throw std::invalid_argument("duplicate share index " + std::to_string(x));
    }
    seen.push_back(r);
  }
}

}  // namespace

void KMConfig::validate() const {
  if (t < 1) throw std::invalid_argument("KMConfig: threshold must be at least 1");
  if (t > n) throw std::invalid_argument("KMConfig: threshold exceeds shareholder count");
}

BigInt evaluate_polynomial(std::span<const BigInt> coefficients, const BigInt& x, const BigInt& q) {
  BigInt acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = mod(acc * x + *it, q);
  return acc;
}

Dealing deal_polynomial(const GroupParams& params, std::span<const BigInt> coefficients,
                        std::span<const ShareIndex> indices) {
  if (coefficients.empty()) throw std::invalid_argument("deal_polynomial: no coefficients");
  check_indices(indices, params.q);
  Dealing d;
  d.master.secret = mod(coefficients[0], params.q);
  d.master.public_key = params.exp(d.master.secret);
  for (ShareIndex x : indices) d.shares.push_back({x, evaluate_polynomial(coefficients, BigInt(x), params.q)});
  return d;
}

Dealing setup(const KMConfig& config, const GroupParams& params, sim::RandomStream& rng) {
  config.validate();
  if (BigInt(config.n) >= params.q) throw std::invalid_argument("setup: more shareholders than the field allows");
  std::vector<BigInt> coeffs;
  coeffs.push_back(random_scalar(params, rng));
  for (std::size_t k = 1; k < config.t; ++k) coeffs.push_back(mod(random_scalar(params, rng), params.q));
  std::vector<ShareIndex> xs(config.n);
  for (std::size_t i = 0; i < config.n; ++i) xs[i] = static_cast<ShareIndex>(i + 1);
  return deal_polynomial(params, coeffs, xs);
}

BigInt lagrange_coefficient(std::span<const ShareIndex> indices, ShareIndex i, const BigInt& at,
                            const BigInt& q) {
  BigInt num = 1, den = 1;
  bool found = false;
  for (ShareIndex j : indices) {
    if (j == i) {
      found = true;
      continue;
    }
    num = mod(num * (at - j), q);
    den = mod(den * (BigInt(i) - j), q);
  }
  if (!found) throw std::invalid_argument("lagrange_coefficient: index not in set");
  return mod(num * inverse_mod_prime(den, q), q);
}

BigInt interpolate(std::span<const KeyShare> shares, const BigInt& at, const BigInt& q) {
  std::vector<ShareIndex> xs;
  for (const auto& s : shares) xs.push_back(s.index);
  check_indices(xs, q);
  BigInt acc = 0;
  for (const auto& s : shares) acc = mod(acc + lagrange_coefficient(xs, s.index, at, q) * s.value, q);
  return acc;
}

}  // namespace mscsim::km
