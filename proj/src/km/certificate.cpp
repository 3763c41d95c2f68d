#include "mscsim/km/certificate.hpp"

namespace mscsim::km {
namespace {

constexpr std::string_view kWireTag = "mscsim-cert-v1";

void put_credential(ByteWriter& w, const GroupParams& params, const ProxyCredential& c) {
  w.str(c.holder)
      .big(c.holder_public_key, params.element_bytes())
      .i64(c.warrant.not_before)
      .i64(c.warrant.not_after)
      .str(c.warrant.permissions)
      .big(c.signature.commitment, params.element_bytes())
      .big(c.signature.response, params.scalar_bytes());
}

void put_unsigned_certificate(ByteWriter& w, const GroupParams& params, const Certificate& c) {
  w.str(c.subject).big(c.subject_public_key, params.element_bytes()).i64(c.issued_at).i64(c.expires_at);
  put_credential(w, params, c.credential);
}

bool in_range(const GroupParams& params, const BigInt& element, const BigInt& scalar) {
  return element < params.p && scalar < params.q;
}

}  // namespace

Bytes credential_body(const GroupParams& params, std::string_view holder, const BigInt& holder_public_key,
                      const Warrant& warrant) {
  ByteWriter w;
  w.str("mscsim-credential-v1")
      .str(holder)
      .big(holder_public_key, params.element_bytes())
      .i64(warrant.not_before)
      .i64(warrant.not_after)
      .str(warrant.permissions);
  return w.take();
}

bool verify_credential(const GroupParams& params, const ProxyCredential& credential, const BigInt& master_public) {
  if (!params.is_element(credential.holder_public_key)) return false;
  const Bytes body = credential_body(params, credential.holder, credential.holder_public_key, credential.warrant);
  return schnorr_verify(params, master_public, body, credential.signature);
}

Bytes certificate_body(const GroupParams& params, const Certificate& cert) {
  ByteWriter w;
  w.str("mscsim-certificate-v1");
  put_unsigned_certificate(w, params, cert);
  return w.take();
}

Bytes encode_certificate(const GroupParams& params, const Certificate& cert) {
  ByteWriter w;
  w.str(kWireTag);
  put_unsigned_certificate(w, params, cert);
  w.big(cert.subject_signature.commitment, params.element_bytes())
      .big(cert.subject_signature.response, params.scalar_bytes());
  return w.take();
}

std::optional<Certificate> decode_certificate(const GroupParams& params, std::span<const std::uint8_t> wire) {
  try {
    ByteReader r(wire);
    if (r.str() != kWireTag) return std::nullopt;
    Certificate c;
    c.subject = r.str();
    c.subject_public_key = r.big(params.element_bytes());
    c.issued_at = r.i64();
    c.expires_at = r.i64();
    ProxyCredential& cred = c.credential;
    cred.holder = r.str();
    cred.holder_public_key = r.big(params.element_bytes());
    cred.warrant.not_before = r.i64();
    cred.warrant.not_after = r.i64();
    cred.warrant.permissions = r.str();
    cred.signature.commitment = r.big(params.element_bytes());
    cred.signature.response = r.big(params.scalar_bytes());
    c.subject_signature.commitment = r.big(params.element_bytes());
    c.subject_signature.response = r.big(params.scalar_bytes());
    if (!r.done()) return std::nullopt;
    if (!in_range(params, c.subject_public_key, 0) || !in_range(params, cred.holder_public_key, 0) ||
        !in_range(params, cred.signature.commitment, cred.signature.response) ||
        !in_range(params, c.subject_signature.commitment, c.subject_signature.response)) {
      return std::nullopt;
    }
    return c;
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

Certificate self_generate_certificate(const GroupParams& params, const std::string& subject,
                                      const ProxyCredential& credential, const KeyPair& proxy_keys,
                                      const BigInt& subject_public_key, Validity validity, std::int64_t now,
                                      sim::RandomStream& rng) {
  if (validity.expires_at <= validity.issued_at) {
    throw std::invalid_argument("self_generate_certificate: expiry does not follow issue time");
  }
  if (!credential.warrant.covers(now)) {
    throw CredentialExpired("self_generate_certificate: credential for " + credential.holder +
                            " is outside its warrant at t=" + std::to_string(now));
  }
  if (params.exp(proxy_keys.secret) != credential.holder_public_key) {
    throw std::invalid_argument("self_generate_certificate: proxy key does not match the credential");
  }
  if (!params.is_element(subject_public_key)) {
    throw std::invalid_argument("self_generate_certificate: subject key is not a group element");
  }
  Certificate c;
  c.subject = subject;
  c.subject_public_key = subject_public_key;
  c.issued_at = validity.issued_at;
  c.expires_at = validity.expires_at;
  c.credential = credential;
  c.subject_signature = schnorr_sign(params, proxy_keys.secret, certificate_body(params, c), rng);
  return c;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::BadCredential: return "bad-credential";
    case Verdict::BadSubjectSignature: return "bad-subject-signature";
    case Verdict::Expired: return "expired";
  }
  return "unknown";
}

Verdict verify_certificate(const GroupParams& params, const Certificate& cert, const BigInt& master_public,
                           std::int64_t now) {
  if (cert.credential.holder != cert.subject || !verify_credential(params, cert.credential, master_public)) {
    return Verdict::BadCredential;
  }
  if (!params.is_element(cert.subject_public_key) ||
      !schnorr_verify(params, cert.credential.holder_public_key, certificate_body(params, cert),
                      cert.subject_signature)) {
    return Verdict::BadSubjectSignature;
  }
  if (now < cert.issued_at || now > cert.expires_at || !cert.credential.warrant.covers(now)) {
    return Verdict::Expired;
  }
  return Verdict::Accept;
}

}  // namespace mscsim::km
