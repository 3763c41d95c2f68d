#pragma once

// Certificate-authenticated ephemeral Diffie-Hellman between two nodes.
//
//   A -> B : cert_A, X_A = g^x, sig_A(X_A, id_B)
//   B -> A : cert_B, X_B = g^y, sig_B(X_B, X_A, id_A), confirm = H(K, X_A, X_B)
//   K = H(X_A^y = X_B^x, id_A, id_B)
//
// Signatures are made with each node's certificate key.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mscsim/km/certificate.hpp"

namespace mscsim::km {

struct NodeIdentity {
  std::string name;
  Certificate certificate;
  KeyPair certificate_keys;  // subject key pair named in the certificate
};

enum class ChannelFailure {
  None,
  InitiatorCertificate,  // B rejected A's certificate
  ResponderCertificate,  // A rejected B's certificate
  InitiatorProof,        // A's handshake signature did not verify
  KeyConfirmation,       // B's signature or confirmation tag did not check out
};

std::string_view to_string(ChannelFailure f) noexcept;

struct HandshakeInit {
  Certificate certificate;
  std::string peer;
  BigInt ephemeral;
  SchnorrSignature signature;
};

struct HandshakeReply {
  Certificate certificate;
  BigInt ephemeral;
  SchnorrSignature signature;
  Digest confirmation{};
};

struct InitiatorState {
  std::string self;
  std::string peer;
  BigInt ephemeral_secret;
  BigInt ephemeral_public;
};

struct ResponderResult {
  ChannelFailure failure = ChannelFailure::None;
  std::optional<Verdict> verdict;  // set on a certificate rejection
  std::optional<Digest> key;
  HandshakeReply reply;
};

struct InitiatorResult {
  ChannelFailure failure = ChannelFailure::None;
  std::optional<Verdict> verdict;
  std::optional<Digest> key;
};

std::pair<InitiatorState, HandshakeInit> initiate_channel(const GroupParams& params, const NodeIdentity& self,
                                                          const std::string& peer, sim::RandomStream& rng);

ResponderResult respond_channel(const GroupParams& params, const NodeIdentity& self, const HandshakeInit& init,
                                const BigInt& master_public, std::int64_t now, sim::RandomStream& rng);

InitiatorResult finish_channel(const GroupParams& params, const InitiatorState& state, const HandshakeReply& reply,
                               const BigInt& master_public, std::int64_t now);

struct ChannelOutcome {
  bool established = false;
  ChannelFailure failure = ChannelFailure::None;
  std::optional<Verdict> verdict;
  Digest initiator_key{};
  Digest responder_key{};
};

/// Runs the whole handshake between a and b without interference.
ChannelOutcome establish_secure_channel(const GroupParams& params, const NodeIdentity& a, const NodeIdentity& b,
                                        const BigInt& master_public, std::int64_t now, sim::RandomStream& rng);

Digest derive_session_key(const GroupParams& params, const BigInt& shared, std::string_view initiator,
                          std::string_view responder);

}  // namespace mscsim::km
