#pragma once

// Schnorr signatures and their t-of-n threshold form.
//
// Signature (R, z) on m under Y: e = H(R, Y, m) mod q, valid iff g^z = R * Y^e.
// In the threshold form each participating server holds a Shamir share s_i of
// the master key and a share k_i of a jointly generated nonce k, and answers
// with z_i = k_i + e * s_i. Lagrange-weighting any t of the z_i at zero gives
// z = k + e * s.
//
// The joint nonce is built commit-then-reveal: every participant deals a
// random degree t-1 polynomial, first publishes a hash of g^{a_j(0)}, and only
// after all commitments are in reveals g^{a_j(0)} along with its sub-shares.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "mscsim/km/sharing.hpp"

namespace mscsim::km {

struct SchnorrSignature {
  BigInt commitment;  // R
  BigInt response;    // z

  friend bool operator==(const SchnorrSignature&, const SchnorrSignature&) = default;
};

BigInt challenge(const GroupParams& params, const BigInt& commitment, const BigInt& public_key,
                 std::span<const std::uint8_t> message);

SchnorrSignature schnorr_sign(const GroupParams& params, const BigInt& secret,
                              std::span<const std::uint8_t> message, sim::RandomStream& rng);
bool schnorr_verify(const GroupParams& params, const BigInt& public_key,
                    std::span<const std::uint8_t> message, const SchnorrSignature& sig);

class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientShares : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NonceCommitment {
  ShareIndex dealer = 0;
  Digest digest{};
};

struct NonceReveal {
  ShareIndex dealer = 0;
  BigInt public_nonce;                       // g^{a_j(0)}
  std::map<ShareIndex, BigInt> subshares;    // a_j(i) for every participant i
};

/// One participant's private contribution to a joint nonce.
class NonceDealer {
 public:
  NonceDealer(const GroupParams& params, ShareIndex dealer, std::size_t threshold,
              std::uint64_t session_id, sim::RandomStream& rng);

  NonceCommitment commit() const;
  NonceReveal reveal(std::span<const ShareIndex> participants) const;

 private:
  const GroupParams* params_;
  ShareIndex dealer_;
  std::uint64_t session_id_;
  std::vector<BigInt> coeffs_;
  BigInt public_nonce_;
};

Digest nonce_commitment_digest(std::uint64_t session_id, ShareIndex dealer, const BigInt& public_nonce,
                               std::size_t element_bytes);

struct NonceShare {
  std::uint64_t session_id = 0;
  ShareIndex index = 0;
  BigInt commitment;  // R = prod_j g^{a_j(0)}
  BigInt value;       // k_i
};

/// Checks every reveal against its commitment and returns each participant's
/// nonce share in participant order. Throws ProtocolViolation on a mismatch,
/// a missing commitment or reveal, or a reveal lacking a participant's sub-share.
std::vector<NonceShare> assemble_nonce(const GroupParams& params, std::uint64_t session_id,
                                       std::span<const ShareIndex> participants,
                                       std::span<const NonceCommitment> commitments,
                                       std::span<const NonceReveal> reveals);

/// Both rounds run in-process for the given participants.
std::vector<NonceShare> joint_nonce(const GroupParams& params, std::uint64_t session_id,
                                    std::span<const ShareIndex> participants, std::size_t threshold,
                                    sim::RandomStream& rng);

struct PartialSignature {
  ShareIndex index = 0;
  std::uint64_t session_id = 0;
  BigInt commitment;
  Digest message_digest{};
  BigInt response;
};

class Shareholder {
 public:
  explicit Shareholder(KeyShare share) : share_{std::move(share)} {}

  const KeyShare& share() const noexcept { return share_; }
  ShareIndex index() const noexcept { return share_.index; }

  /// z_i = k_i + e * s_i. A nonce session already spent on a different
  /// message is refused with ProtocolViolation and counted.
  PartialSignature partial_sign(const GroupParams& params, const BigInt& master_public,
                                std::span<const std::uint8_t> message, const NonceShare& nonce);

  std::size_t violations() const noexcept { return violations_; }
  std::size_t served() const noexcept { return served_; }

 private:
  KeyShare share_;
  std::map<std::uint64_t, Digest> spent_;
  std::size_t violations_ = 0;
  std::size_t served_ = 0;
};

/// Lagrange step alone, over whatever partials it is given.
SchnorrSignature lagrange_combine(const GroupParams& params, std::span<const PartialSignature> partials);

/// Uses the t partials with the lowest indices. Throws InsufficientShares when
/// fewer than t distinct indices are present and std::invalid_argument when
/// partials come from different sessions or messages.
SchnorrSignature combine_partials(const GroupParams& params, std::span<const PartialSignature> partials,
                                  std::size_t threshold);

}  // namespace mscsim::km
