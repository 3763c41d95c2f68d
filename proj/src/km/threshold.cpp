#include "mscsim/km/threshold.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace mscsim::km {

BigInt challenge(const GroupParams& params, const BigInt& commitment, const BigInt& public_key,
                 std::span<const std::uint8_t> message) {
  ByteWriter w;
  w.str("mscsim-schnorr-v1")
      .big(commitment, params.element_bytes())
      .big(public_key, params.element_bytes())
      .u64(message.size())
      .raw(message);
  const Digest d = w.digest();
  return mod(from_bytes(d), params.q);
}

SchnorrSignature schnorr_sign(const GroupParams& params, const BigInt& secret,
                              std::span<const std::uint8_t> message, sim::RandomStream& rng) {
  const BigInt k = random_scalar(params, rng);
  const BigInt r = params.exp(k);
  const BigInt e = challenge(params, r, params.exp(secret), message);
  return {r, mod(k + e * secret, params.q)};
}

bool schnorr_verify(const GroupParams& params, const BigInt& public_key,
                    std::span<const std::uint8_t> message, const SchnorrSignature& sig) {
  if (!params.is_element(sig.commitment) || !params.is_element(public_key)) return false;
  if (sig.response < 0 || sig.response >= params.q) return false;
  const BigInt e = challenge(params, sig.commitment, public_key, message);
  return params.exp(sig.response) == params.mul(sig.commitment, params.pow(public_key, e));
}

Digest nonce_commitment_digest(std::uint64_t session_id, ShareIndex dealer, const BigInt& public_nonce,
                               std::size_t element_bytes) {
  ByteWriter w;
  w.str("mscsim-nonce-commit-v1").u64(session_id).u32(dealer).big(public_nonce, element_bytes);
  return w.digest();
}

NonceDealer::NonceDealer(const GroupParams& params, ShareIndex dealer, std::size_t threshold,
                         std::uint64_t session_id, sim::RandomStream& rng)
    : params_{&params}, dealer_{dealer}, session_id_{session_id} {
  if (threshold < 1) throw std::invalid_argument("NonceDealer: threshold must be at least 1");
  coeffs_.reserve(threshold);
  for (std::size_t k = 0; k < threshold; ++k) coeffs_.push_back(random_scalar(params, rng));
  public_nonce_ = params.exp(coeffs_[0]);
}

NonceCommitment NonceDealer::commit() const {
  return {dealer_, nonce_commitment_digest(session_id_, dealer_, public_nonce_, params_->element_bytes())};
}

NonceReveal NonceDealer::reveal(std::span<const ShareIndex> participants) const {
  NonceReveal r{dealer_, public_nonce_, {}};
  for (ShareIndex i : participants) r.subshares[i] = evaluate_polynomial(coeffs_, BigInt(i), params_->q);
  return r;
}

std::vector<NonceShare> assemble_nonce(const GroupParams& params, std::uint64_t session_id,
                                       std::span<const ShareIndex> participants,
                                       std::span<const NonceCommitment> commitments,
                                       std::span<const NonceReveal> reveals) {
  std::map<ShareIndex, const NonceCommitment*> by_dealer;
  for (const auto& c : commitments) by_dealer[c.dealer] = &c;

  BigInt big_r = 1;
  std::map<ShareIndex, BigInt> k;
  for (ShareIndex i : participants) k[i] = 0;
  std::set<ShareIndex> revealed;

  for (const auto& rv : reveals) {
    auto it = by_dealer.find(rv.dealer);
    if (it == by_dealer.end()) {
      throw ProtocolViolation("nonce reveal from " + std::to_string(rv.dealer) + " without a commitment");
    }
    if (!revealed.insert(rv.dealer).second) {
      throw ProtocolViolation("second nonce reveal from " + std::to_string(rv.dealer));
    }
    if (!params.is_element(rv.public_nonce) ||
        nonce_commitment_digest(session_id, rv.dealer, rv.public_nonce, params.element_bytes()) !=
            it->second->digest) {
      throw ProtocolViolation("nonce reveal from " + std::to_string(rv.dealer) + " does not match its commitment");
    }
    big_r = params.mul(big_r, rv.public_nonce);
    for (ShareIndex i : participants) {
      auto sub = rv.subshares.find(i);
      if (sub == rv.subshares.end()) {
        throw ProtocolViolation("nonce reveal from " + std::to_string(rv.dealer) + " lacks a sub-share for " +
                                std::to_string(i));
      }
      k[i] = mod(k[i] + sub->second, params.q);
    }
  }
  for (ShareIndex i : participants) {
    if (!revealed.count(i)) throw ProtocolViolation("participant " + std::to_string(i) + " never revealed");
  }
  if (!params.is_element(big_r)) throw ProtocolViolation("joint nonce collapsed to the identity");

  std::vector<NonceShare> out;
  for (ShareIndex i : participants) out.push_back({session_id, i, big_r, k[i]});
  return out;
}

std::vector<NonceShare> joint_nonce(const GroupParams& params, std::uint64_t session_id,
                                    std::span<const ShareIndex> participants, std::size_t threshold,
                                    sim::RandomStream& rng) {
  if (participants.size() < threshold) {
    throw InsufficientShares("joint nonce needs " + std::to_string(threshold) + " participants, got " +
                             std::to_string(participants.size()));
  }
  std::vector<NonceDealer> dealers;
  std::vector<NonceCommitment> commitments;
  for (ShareIndex i : participants) {
    dealers.emplace_back(params, i, threshold, session_id, rng);
    commitments.push_back(dealers.back().commit());
  }
  std::vector<NonceReveal> reveals;
  for (const auto& d : dealers) reveals.push_back(d.reveal(participants));
  return assemble_nonce(params, session_id, participants, commitments, reveals);
}

PartialSignature Shareholder::partial_sign(const GroupParams& params, const BigInt& master_public,
                                           std::span<const std::uint8_t> message, const NonceShare& nonce) {
  if (nonce.index != share_.index) {
    throw std::invalid_argument("partial_sign: nonce share belongs to index " + std::to_string(nonce.index));
  }
  const Digest md = sha256(message);
  auto [it, fresh] = spent_.try_emplace(nonce.session_id, md);
  if (!fresh && it->second != md) {
    ++violations_;
    throw ProtocolViolation("nonce session " + std::to_string(nonce.session_id) +
                            " reused for a different message by index " + std::to_string(share_.index));
  }
  const BigInt e = challenge(params, nonce.commitment, master_public, message);
  ++served_;
  return {share_.index, nonce.session_id, nonce.commitment, md, mod(nonce.value + e * share_.value, params.q)};
}

SchnorrSignature lagrange_combine(const GroupParams& params, std::span<const PartialSignature> partials) {
  if (partials.empty()) throw InsufficientShares("no partial signatures");
  std::vector<ShareIndex> xs;
  for (const auto& p : partials) xs.push_back(p.index);
  BigInt z = 0;
  for (const auto& p : partials) {
    z = mod(z + lagrange_coefficient(xs, p.index, BigInt(0), params.q) * p.response, params.q);
  }
  return {partials.front().commitment, z};
}

SchnorrSignature combine_partials(const GroupParams& params, std::span<const PartialSignature> partials,
                                  std::size_t threshold) {
  if (threshold < 1) throw std::invalid_argument("combine_partials: threshold must be at least 1");
  std::map<ShareIndex, const PartialSignature*> by_index;
  for (const auto& p : partials) {
    const PartialSignature& first = partials.front();
    if (p.session_id != first.session_id || p.commitment != first.commitment ||
        p.message_digest != first.message_digest) {
      throw std::invalid_argument("combine_partials: partials from different sessions");
    }
    auto [it, fresh] = by_index.emplace(p.index, &p);
    if (!fresh && it->second->response != p.response) {
      throw std::invalid_argument("combine_partials: conflicting partials for index " + std::to_string(p.index));
    }
  }
  if (by_index.size() < threshold) {
    throw InsufficientShares("combine_partials: " + std::to_string(by_index.size()) + " distinct partials, need " +
                             std::to_string(threshold));
  }
  std::vector<PartialSignature> chosen;
  for (const auto& [idx, p] : by_index) {
    if (chosen.size() == threshold) break;
    chosen.push_back(*p);
  }
  return lagrange_combine(params, chosen);
}

}  // namespace mscsim::km
