#pragma once

// Proxy credentials and self-generated certificates.
//
// A proxy credential is the distributed authority's threshold signature over
// (holder, holder public key, warrant). Its holder then signs certificates for
// itself with the proxy secret, offline, and anyone holding the master public
// key Y can check both layers.
//
// Times are integer simulation seconds.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mscsim/km/threshold.hpp"

namespace mscsim::km {

struct Warrant {
  std::int64_t not_before = 0;
  std::int64_t not_after = 0;
  std::string permissions = "certify";

  bool covers(std::int64_t now) const noexcept { return now >= not_before && now <= not_after; }
  friend bool operator==(const Warrant&, const Warrant&) = default;
};

struct ProxyCredential {
  std::string holder;
  BigInt holder_public_key;
  Warrant warrant;
  SchnorrSignature signature;

  friend bool operator==(const ProxyCredential&, const ProxyCredential&) = default;
};

/// The bytes the authority signs.
Bytes credential_body(const GroupParams& params, std::string_view holder, const BigInt& holder_public_key,
                      const Warrant& warrant);
bool verify_credential(const GroupParams& params, const ProxyCredential& credential, const BigInt& master_public);

struct Validity {
  std::int64_t issued_at = 0;
  std::int64_t expires_at = 0;
};

struct Certificate {
  std::string subject;
  BigInt subject_public_key;
  std::int64_t issued_at = 0;
  std::int64_t expires_at = 0;
  ProxyCredential credential;
  SchnorrSignature subject_signature;  // by the credential's holder key over everything above

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

Bytes certificate_body(const GroupParams& params, const Certificate& cert);

/// Canonical wire form. decode_certificate returns nullopt on any malformed,
/// truncated, trailing or out-of-range input.
Bytes encode_certificate(const GroupParams& params, const Certificate& cert);
std::optional<Certificate> decode_certificate(const GroupParams& params, std::span<const std::uint8_t> wire);

class CredentialExpired : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Purely local. Throws CredentialExpired when `now` is outside the warrant and
/// std::invalid_argument when the validity window is empty or the proxy key
/// does not match the credential.
Certificate self_generate_certificate(const GroupParams& params, const std::string& subject,
                                      const ProxyCredential& credential, const KeyPair& proxy_keys,
                                      const BigInt& subject_public_key, Validity validity, std::int64_t now,
                                      sim::RandomStream& rng);

enum class Verdict { Accept, BadCredential, BadSubjectSignature, Expired };

std::string_view to_string(Verdict v) noexcept;

/// Signatures are checked before time, so a forged and stale certificate
/// reports the forgery.
Verdict verify_certificate(const GroupParams& params, const Certificate& cert, const BigInt& master_public,
                           std::int64_t now);

}  // namespace mscsim::km
