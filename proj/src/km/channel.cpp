#include "mscsim/km/channel.hpp"

namespace mscsim::km {
namespace {

Bytes init_body(const GroupParams& params, std::string_view self, std::string_view peer, const BigInt& x_a) {
  ByteWriter w;
  w.str("mscsim-channel-init-v1").str(self).str(peer).big(x_a, params.element_bytes());
  return w.take();
}

Bytes reply_body(const GroupParams& params, std::string_view self, std::string_view peer, const BigInt& x_b,
                 const BigInt& x_a) {
  ByteWriter w;
  w.str("mscsim-channel-reply-v1")
      .str(self)
      .str(peer)
      .big(x_b, params.element_bytes())
      .big(x_a, params.element_bytes());
  return w.take();
}

Digest confirmation_tag(const GroupParams& params, const Digest& key, const BigInt& x_a, const BigInt& x_b) {
  ByteWriter w;
  w.str("mscsim-channel-confirm-v1").raw(key).big(x_a, params.element_bytes()).big(x_b, params.element_bytes());
  return w.digest();
}

}  // namespace

std::string_view to_string(ChannelFailure f) noexcept {
  switch (f) {
    case ChannelFailure::None: return "none";
    case ChannelFailure::InitiatorCertificate: return "initiator-certificate";
    case ChannelFailure::ResponderCertificate: return "responder-certificate";
    case ChannelFailure::InitiatorProof: return "initiator-proof";
    case ChannelFailure::KeyConfirmation: return "key-confirmation";
  }
  return "unknown";
}

Digest derive_session_key(const GroupParams& params, const BigInt& shared, std::string_view initiator,
                          std::string_view responder) {
  ByteWriter w;
  w.str("mscsim-session-key-v1").big(shared, params.element_bytes()).str(initiator).str(responder);
  return w.digest();
}

std::pair<InitiatorState, HandshakeInit> initiate_channel(const GroupParams& params, const NodeIdentity& self,
                                                          const std::string& peer, sim::RandomStream& rng) {
  InitiatorState st{self.name, peer, random_scalar(params, rng), {}};
  st.ephemeral_public = params.exp(st.ephemeral_secret);
  HandshakeInit init{self.certificate, peer, st.ephemeral_public,
                     schnorr_sign(params, self.certificate_keys.secret,
                                  init_body(params, self.name, peer, st.ephemeral_public), rng)};
  return {std::move(st), std::move(init)};
}

ResponderResult respond_channel(const GroupParams& params, const NodeIdentity& self, const HandshakeInit& init,
                                const BigInt& master_public, std::int64_t now, sim::RandomStream& rng) {
  ResponderResult out;
  const Verdict v = verify_certificate(params, init.certificate, master_public, now);
  if (v != Verdict::Accept) {
    out.failure = ChannelFailure::InitiatorCertificate;
    out.verdict = v;
    return out;
  }
  const std::string& initiator = init.certificate.subject;
  if (init.peer != self.name || !params.is_element(init.ephemeral) ||
      !schnorr_verify(params, init.certificate.subject_public_key,
                      init_body(params, initiator, init.peer, init.ephemeral), init.signature)) {
    out.failure = ChannelFailure::InitiatorProof;
    return out;
  }
  const BigInt y = random_scalar(params, rng);
  const BigInt x_b = params.exp(y);
  const Digest key = derive_session_key(params, params.pow(init.ephemeral, y), initiator, self.name);
  out.reply.certificate = self.certificate;
  out.reply.ephemeral = x_b;
  out.reply.signature =
      schnorr_sign(params, self.certificate_keys.secret, reply_body(params, self.name, initiator, x_b, init.ephemeral), rng);
  out.reply.confirmation = confirmation_tag(params, key, init.ephemeral, x_b);
  out.key = key;
  return out;
}

InitiatorResult finish_channel(const GroupParams& params, const InitiatorState& state, const HandshakeReply& reply,
                               const BigInt& master_public, std::int64_t now) {
  InitiatorResult out;
  const Verdict v = verify_certificate(params, reply.certificate, master_public, now);
  if (v != Verdict::Accept || reply.certificate.subject != state.peer) {
    out.failure = ChannelFailure::ResponderCertificate;
    out.verdict = v;
    return out;
  }
  if (!params.is_element(reply.ephemeral) ||
      !schnorr_verify(params, reply.certificate.subject_public_key,
                      reply_body(params, state.peer, state.self, reply.ephemeral, state.ephemeral_public),
                      reply.signature)) {
    out.failure = ChannelFailure::KeyConfirmation;
    return out;
  }
  const Digest key =
      derive_session_key(params, params.pow(reply.ephemeral, state.ephemeral_secret), state.self, state.peer);
  if (confirmation_tag(params, key, state.ephemeral_public, reply.ephemeral) != reply.confirmation) {
    out.failure = ChannelFailure::KeyConfirmation;
    return out;
  }
  out.key = key;
  return out;
}

ChannelOutcome establish_secure_channel(const GroupParams& params, const NodeIdentity& a, const NodeIdentity& b,
                                        const BigInt& master_public, std::int64_t now, sim::RandomStream& rng) {
  ChannelOutcome out;
  auto [state, init] = initiate_channel(params, a, b.name, rng);
  ResponderResult r = respond_channel(params, b, init, master_public, now, rng);
  if (r.failure != ChannelFailure::None) {
    out.failure = r.failure;
    out.verdict = r.verdict;
    return out;
  }
  InitiatorResult f = finish_channel(params, state, r.reply, master_public, now);
  if (f.failure != ChannelFailure::None) {
    out.failure = f.failure;
    out.verdict = f.verdict;
    return out;
  }
  out.established = true;
  out.initiator_key = *f.key;
  out.responder_key = *r.key;
  return out;
}

}  // namespace mscsim::km
