#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <stdexcept>
#include <vector>

#include "mscsim/km/authority.hpp"
#include "mscsim/km/bytes.hpp"
#include "mscsim/km/certificate.hpp"
#include "mscsim/km/channel.hpp"
#include "mscsim/km/group.hpp"
#include "mscsim/km/sharing.hpp"
#include "mscsim/km/threshold.hpp"

using namespace mscsim;
using namespace mscsim::km;

namespace {

const GroupParams& big() {
  static const GroupParams g = GroupParams::builtin();
  return g;
}

Bytes msg(std::string_view s) { return Bytes(s.begin(), s.end()); }

// every k-subset of {1..n}
std::vector<std::vector<ShareIndex>> subsets(ShareIndex n, std::size_t k) {
  std::vector<std::vector<ShareIndex>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<ShareIndex> s;
    for (ShareIndex i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i + 1);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

struct Fixture {
  sim::RandomStream rng;
  DistributedAuthority authority;
  explicit Fixture(KMConfig cfg = {}, std::uint64_t seed = 21)
      : rng(seed, 4), authority(big(), cfg, setup(cfg, big(), rng)) {}

  std::vector<ShareIndex> all() const { return authority.roster(); }

  NodeIdentity identity(const std::string& name, std::int64_t now = 0) {
    Warrant w{0, 1000};
    const auto roster = all();
    auto grant = authority.request_credential(name, roster, w, rng);
    const auto subject = KeyPair::generate(authority.params(), rng);
    auto cert = self_generate_certificate(authority.params(), name, grant.credential, grant.proxy_keys,
                                          subject.public_key, {now, now + 500}, now, rng);
    return {name, cert, subject};
  }
};

}  // namespace

TEST_SUITE("km") {

TEST_CASE("group parameters validate") {
  CHECK_NOTHROW(GroupParams::toy().validate());
  CHECK_NOTHROW(big().validate());
  CHECK(big().scalar_bytes() == 32);
  CHECK(big().element_bytes() == 256);
  GroupParams bad = GroupParams::toy();
  bad.g = 5;  // order 22, not 11
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = GroupParams::toy();
  bad.q = 7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("group parameter text round-trips") {
  const auto text = format_group_params(big());
  CHECK(parse_group_params(text) == big());
  CHECK(parse_group_params("# toy\np = 17\nq = b\n\ng = 2\n") == GroupParams::toy());
  CHECK_THROWS_AS(parse_group_params("p = 17\nq = b\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_params("p = 17\nq = b\ng = zz\n"), std::invalid_argument);
}

TEST_CASE("group parameters load from a file") {
  const auto path = std::filesystem::temp_directory_path() / "mscsim-group.txt";
  {
    std::ofstream out(path);
    out << format_group_params(big());
  }
  CHECK(load_group_params(path) == big());
  std::filesystem::remove(path);
  CHECK_THROWS(load_group_params(path));
}

TEST_CASE("toy polynomial shares and reconstruction") {
  const auto& toy = GroupParams::toy();
  const std::vector<BigInt> f{7, 3, 2};
  const std::vector<ShareIndex> xs{1, 2, 3};
  const auto d = deal_polynomial(toy, f, xs);
  REQUIRE(d.shares.size() == 3);
  CHECK(d.shares[0].value == 1);
  CHECK(d.shares[1].value == 10);
  CHECK(d.shares[2].value == 1);
  CHECK(d.master.secret == 7);
  CHECK(d.master.public_key == toy.exp(7));
  CHECK(interpolate(d.shares, 0, toy.q) == 7);
  CHECK(evaluate_polynomial(f, 4, toy.q) == 7);
  const std::vector<ShareIndex> dup{1, 12};  // 12 = 1 mod 11
  CHECK_THROWS_AS(deal_polynomial(toy, f, dup), std::invalid_argument);
  const std::vector<ShareIndex> zero{0, 1};
  CHECK_THROWS_AS(deal_polynomial(toy, f, zero), std::invalid_argument);
}

TEST_CASE("setup: t=1 gives constant shares, t>n is refused") {
  sim::RandomStream rng(1, 4);
  const auto d = setup({4, 1}, big(), rng);
  for (const auto& s : d.shares) CHECK(s.value == d.master.secret);
  CHECK(d.master.public_key == big().exp(d.master.secret));
  CHECK_THROWS_AS(setup({2, 3}, big(), rng), std::invalid_argument);
  CHECK_THROWS_AS(setup({2, 0}, big(), rng), std::invalid_argument);
}

TEST_CASE("any t shares interpolate the secret, t-1 do not") {
  sim::RandomStream rng(2, 4);
  const auto d = setup({6, 3}, big(), rng);
  for (const auto& s : subsets(6, 3)) {
    std::vector<KeyShare> pick;
    for (auto i : s) pick.push_back(d.shares[i - 1]);
    REQUIRE(interpolate(pick, 0, big().q) == d.master.secret);
  }
  for (const auto& s : subsets(6, 2)) {
    std::vector<KeyShare> pick;
    for (auto i : s) pick.push_back(d.shares[i - 1]);
    REQUIRE(interpolate(pick, 0, big().q) != d.master.secret);
  }
}

TEST_CASE("plain Schnorr signatures") {
  sim::RandomStream rng(3, 4);
  const auto kp = KeyPair::generate(big(), rng);
  const auto m = msg("hello");
  const auto sig = schnorr_sign(big(), kp.secret, m, rng);
  CHECK(schnorr_verify(big(), kp.public_key, m, sig));
  auto bad = m;
  bad[0] ^= 1;
  CHECK_FALSE(schnorr_verify(big(), kp.public_key, bad, sig));
  const auto other = KeyPair::generate(big(), rng);
  CHECK_FALSE(schnorr_verify(big(), other.public_key, m, sig));
  auto s2 = sig;
  s2.response += big().q;
  CHECK_FALSE(schnorr_verify(big(), kp.public_key, m, s2));
}

TEST_CASE("t=1: a single partial is a complete signature") {
  sim::RandomStream rng(4, 4);
  const auto d = setup({3, 1}, big(), rng);
  Shareholder h(d.shares[1]);
  const std::vector<ShareIndex> p{h.index()};
  const auto nonce = joint_nonce(big(), 1, p, 1, rng);
  const auto m = msg("solo");
  const auto part = h.partial_sign(big(), d.master.public_key, m, nonce[0]);
  const SchnorrSignature sig{part.commitment, part.response};
  CHECK(schnorr_verify(big(), d.master.public_key, m, sig));
}

TEST_CASE("exhaustive subsets at n=5, t=3") {
  sim::RandomStream rng(5, 4);
  const auto d = setup({5, 3}, big(), rng);
  std::vector<Shareholder> holders;
  for (const auto& s : d.shares) holders.emplace_back(s);
  const auto Y = d.master.public_key;
  const auto m = msg("credential body");
  std::uint64_t session = 100;

  for (const auto& set : subsets(5, 3)) {
    const auto nonce = joint_nonce(big(), ++session, set, 3, rng);
    std::vector<PartialSignature> parts;
    for (std::size_t i = 0; i < set.size(); ++i) {
      parts.push_back(holders[set[i] - 1].partial_sign(big(), Y, m, nonce[i]));
    }
    const auto sig = combine_partials(big(), parts, 3);
    REQUIRE(schnorr_verify(big(), Y, m, sig));
    auto tampered = m;
    tampered[3] ^= 0x40;
    REQUIRE_FALSE(schnorr_verify(big(), Y, tampered, sig));
  }

  for (const auto& set : subsets(5, 2)) {
    // two honest partials from a full nonce session: the combination fails
    std::vector<ShareIndex> with_third = set;
    for (ShareIndex x = 1; x <= 5; ++x) {
      if (std::find(set.begin(), set.end(), x) == set.end()) {
        with_third.push_back(x);
        break;
      }
    }
    std::sort(with_third.begin(), with_third.end());
    const auto nonce = joint_nonce(big(), ++session, with_third, 3, rng);
    std::vector<PartialSignature> parts;
    for (std::size_t i = 0; i < with_third.size(); ++i) {
      if (std::find(set.begin(), set.end(), with_third[i]) == set.end()) continue;
      parts.push_back(holders[with_third[i] - 1].partial_sign(big(), Y, m, nonce[i]));
    }
    REQUIRE(parts.size() == 2);
    CHECK_THROWS_AS(combine_partials(big(), parts, 3), InsufficientShares);
    REQUIRE_FALSE(schnorr_verify(big(), Y, m, lagrange_combine(big(), parts)));
    CHECK_THROWS_AS(joint_nonce(big(), ++session, set, 3, rng), InsufficientShares);
  }
}

TEST_CASE("t+1 partials: every t-subset gives the same verifying signature") {
  sim::RandomStream rng(6, 4);
  const auto d = setup({5, 3}, big(), rng);
  std::vector<Shareholder> holders;
  for (const auto& s : d.shares) holders.emplace_back(s);
  const std::vector<ShareIndex> four{1, 2, 4, 5};
  const auto nonce = joint_nonce(big(), 7, four, 3, rng);
  const auto m = msg("four");
  std::vector<PartialSignature> parts;
  for (std::size_t i = 0; i < 4; ++i) parts.push_back(holders[four[i] - 1].partial_sign(big(), d.master.public_key, m, nonce[i]));
  const auto full = combine_partials(big(), parts, 3);
  CHECK(schnorr_verify(big(), d.master.public_key, m, full));
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::vector<PartialSignature> three;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != skip) three.push_back(parts[i]);
    }
    CHECK(lagrange_combine(big(), three) == full);
  }
}

TEST_CASE("nonce reuse on a different message is a violation") {
  sim::RandomStream rng(7, 4);
  const auto d = setup({3, 2}, big(), rng);
  Shareholder h(d.shares[0]);
  const std::vector<ShareIndex> p{1, 2};
  const auto nonce = joint_nonce(big(), 9, p, 2, rng);
  CHECK_NOTHROW(h.partial_sign(big(), d.master.public_key, msg("a"), nonce[0]));
  CHECK_NOTHROW(h.partial_sign(big(), d.master.public_key, msg("a"), nonce[0]));
  CHECK_THROWS_AS(h.partial_sign(big(), d.master.public_key, msg("b"), nonce[0]), ProtocolViolation);
  CHECK(h.violations() == 1);
  CHECK_THROWS_AS(h.partial_sign(big(), d.master.public_key, msg("a"), nonce[1]), std::invalid_argument);
}

TEST_CASE("a reveal that does not match its commitment is caught") {
  sim::RandomStream rng(8, 4);
  const std::vector<ShareIndex> p{1, 2, 3};
  std::vector<NonceDealer> dealers;
  std::vector<NonceCommitment> commits;
  for (auto i : p) {
    dealers.emplace_back(big(), i, 3, 11, rng);
    commits.push_back(dealers.back().commit());
  }
  std::vector<NonceReveal> reveals;
  for (const auto& dl : dealers) reveals.push_back(dl.reveal(p));
  CHECK_NOTHROW(assemble_nonce(big(), 11, p, commits, reveals));
  auto swapped = reveals;
  swapped[1].public_nonce = big().mul(swapped[1].public_nonce, big().g);
  CHECK_THROWS_AS(assemble_nonce(big(), 11, p, commits, swapped), ProtocolViolation);
  auto missing = reveals;
  missing[2].subshares.erase(1);
  CHECK_THROWS_AS(assemble_nonce(big(), 11, p, commits, missing), ProtocolViolation);
  auto short_list = reveals;
  short_list.pop_back();
  CHECK_THROWS_AS(assemble_nonce(big(), 11, p, commits, short_list), ProtocolViolation);
  CHECK_THROWS_AS(assemble_nonce(big(), 12, p, commits, reveals), ProtocolViolation);
}

TEST_CASE("combining partials from different sessions is refused") {
  sim::RandomStream rng(9, 4);
  const auto d = setup({3, 2}, big(), rng);
  Shareholder a(d.shares[0]), b(d.shares[1]);
  const std::vector<ShareIndex> p{1, 2};
  const auto n1 = joint_nonce(big(), 1, p, 2, rng);
  const auto n2 = joint_nonce(big(), 2, p, 2, rng);
  const std::vector<PartialSignature> mixed{a.partial_sign(big(), d.master.public_key, msg("x"), n1[0]),
                                            b.partial_sign(big(), d.master.public_key, msg("x"), n2[1])};
  CHECK_THROWS_AS(combine_partials(big(), mixed, 2), std::invalid_argument);
  const std::vector<PartialSignature> dup{mixed[0], mixed[0]};
  CHECK_THROWS_AS(combine_partials(big(), dup, 2), InsufficientShares);
}

TEST_CASE("issue_share: toy polynomial at x=4") {
  const auto& toy = GroupParams::toy();
  const std::vector<BigInt> f{7, 3, 2};
  const std::vector<ShareIndex> xs{1, 2, 3};
  const auto d = deal_polynomial(toy, f, xs);
  sim::RandomStream rng(10, 4);
  IssueTranscript tr;
  const auto s4 = issue_share(toy, 4, d.shares, 3, rng, &tr);
  CHECK(s4.index == 4);
  CHECK(s4.value == 7);
  CHECK(mod(tr.blind_sum, toy.q) == 0);
  CHECK_THROWS_AS(issue_share(toy, 2, d.shares, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(issue_share(toy, 0, d.shares, 3, rng), std::invalid_argument);
  const std::vector<KeyShare> two(d.shares.begin(), d.shares.begin() + 2);
  CHECK_THROWS_AS(issue_share(toy, 4, two, 3, rng), ServiceUnavailable);
}

TEST_CASE("issued shares mix with old ones and the transcript is blinded") {
  sim::RandomStream rng(11, 4);
  const auto d = setup({5, 3}, big(), rng);
  IssueTranscript tr;
  const auto s6 = issue_share(big(), 6, d.shares, 3, rng, &tr);
  CHECK(s6.value == interpolate(d.shares, 6, big().q));
  for (const auto& pair : subsets(5, 2)) {
    std::vector<KeyShare> mix{s6, d.shares[pair[0] - 1], d.shares[pair[1] - 1]};
    REQUIRE(interpolate(mix, 0, big().q) == d.master.secret);
  }
  CHECK(mod(tr.blind_sum, big().q) == 0);
  REQUIRE(tr.servers.size() == 3);
  BigInt sum = 0;
  for (auto i : tr.servers) {
    const std::vector<ShareIndex> idx = tr.servers;
    const BigInt raw = mod(lagrange_coefficient(idx, i, 6, big().q) * d.shares[i - 1].value, big().q);
    REQUIRE(tr.blinded.at(i) != raw);
    REQUIRE(tr.blinded.at(i) != d.shares[i - 1].value);
    sum += tr.blinded.at(i);
  }
  CHECK(mod(sum, big().q) == s6.value);
}

TEST_CASE("credential service: availability and soundness") {
  Fixture fx({5, 3});
  const Warrant w{0, 100};
  const std::vector<ShareIndex> two{1, 4};
  CHECK_THROWS_AS(fx.authority.request_credential("n1", two, w, fx.rng), ServiceUnavailable);
  const auto three = std::vector<ShareIndex>{2, 3, 5};
  const auto grant = fx.authority.request_credential("n1", three, w, fx.rng);
  CHECK(grant.servers == three);
  CHECK(verify_credential(big(), grant.credential, fx.authority.master_public()));
  sim::RandomStream other_rng(99, 4);
  const auto other = setup({5, 3}, big(), other_rng);
  CHECK_FALSE(verify_credential(big(), grant.credential, other.master.public_key));
  auto forged = grant.credential;
  forged.warrant.not_after = 1000000;
  CHECK_FALSE(verify_credential(big(), forged, fx.authority.master_public()));
  const auto log = fx.authority.transcript();
  REQUIRE(log.size() == 2);
  CHECK(log[0].outcome.rfind("unavailable", 0) == 0);
  CHECK(log[1].outcome == "ok");
  CHECK(log[1].participants == three);
}

TEST_CASE("certificates verify end to end and need no network") {
  Fixture fx({5, 3});
  auto grant = fx.authority.request_credential("car-1", fx.all(), {0, 1000}, fx.rng);
  const auto subject = KeyPair::generate(big(), fx.rng);
  const auto before = fx.authority.tap().sends();
  const auto cert = self_generate_certificate(big(), "car-1", grant.credential, grant.proxy_keys,
                                              subject.public_key, {10, 20}, 10, fx.rng);
  CHECK(fx.authority.tap().sends() == before);
  const auto Y = fx.authority.master_public();
  CHECK(verify_certificate(big(), cert, Y, 15) == Verdict::Accept);
  CHECK(verify_certificate(big(), cert, Y, 21) == Verdict::Expired);
  CHECK(verify_certificate(big(), cert, Y, 9) == Verdict::Expired);
  CHECK(to_string(Verdict::BadCredential) == "bad-credential");
  CHECK(to_string(Verdict::BadSubjectSignature) == "bad-subject-signature");
  CHECK(to_string(Verdict::Expired) == "expired");

  CHECK_THROWS_AS(self_generate_certificate(big(), "car-1", grant.credential, grant.proxy_keys,
                                            subject.public_key, {20, 10}, 10, fx.rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(self_generate_certificate(big(), "car-1", grant.credential, grant.proxy_keys,
                                            subject.public_key, {2000, 2100}, 2000, fx.rng),
                  CredentialExpired);
  CHECK_THROWS_AS(self_generate_certificate(big(), "car-1", grant.credential, subject, subject.public_key,
                                            {10, 20}, 10, fx.rng),
                  std::invalid_argument);

  Fixture rival({5, 3}, 22);
  CHECK(verify_certificate(big(), cert, rival.authority.master_public(), 15) == Verdict::BadCredential);

  auto resigned = cert;
  resigned.expires_at = 19;
  CHECK(verify_certificate(big(), resigned, Y, 15) == Verdict::BadSubjectSignature);

  auto stolen = cert;
  stolen.subject = "car-2";
  CHECK(verify_certificate(big(), stolen, Y, 15) == Verdict::BadCredential);
}

TEST_CASE("certificate wire form round-trips and every byte flip is rejected") {
  Fixture fx({5, 3});
  auto grant = fx.authority.request_credential("car-1", fx.all(), {0, 1000}, fx.rng);
  const auto subject = KeyPair::generate(big(), fx.rng);
  const auto cert = self_generate_certificate(big(), "car-1", grant.credential, grant.proxy_keys,
                                              subject.public_key, {10, 500}, 10, fx.rng);
  const auto Y = fx.authority.master_public();
  const auto wire = encode_certificate(big(), cert);
  const auto back = decode_certificate(big(), wire);
  REQUIRE(back);
  CHECK(*back == cert);
  auto trailing = wire;
  trailing.push_back(0);
  CHECK_FALSE(decode_certificate(big(), trailing));
  CHECK_FALSE(decode_certificate(big(), std::span(wire).first(wire.size() - 1)));

  sim::RandomStream fuzz(12, 9);
  std::size_t accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    auto w = wire;
    const auto pos = fuzz.below(w.size());
    w[pos] ^= static_cast<std::uint8_t>(1 + fuzz.below(255));
    const auto dec = decode_certificate(big(), w);
    if (dec && verify_certificate(big(), *dec, Y, 100) == Verdict::Accept) ++accepted;
  }
  CHECK(accepted == 0);
}

TEST_CASE("secure channel between certified nodes") {
  Fixture fx({5, 3});
  const auto a = fx.identity("alpha");
  const auto b = fx.identity("bravo");
  const auto Y = fx.authority.master_public();
  const auto ok = establish_secure_channel(big(), a, b, Y, 100, fx.rng);
  CHECK(ok.established);
  CHECK(ok.failure == ChannelFailure::None);
  CHECK(ok.initiator_key == ok.responder_key);

  const auto again = establish_secure_channel(big(), a, b, Y, 100, fx.rng);
  CHECK(again.initiator_key != ok.initiator_key);  // fresh ephemerals

  const auto late = establish_secure_channel(big(), a, b, Y, 600, fx.rng);
  CHECK_FALSE(late.established);
  CHECK(late.failure == ChannelFailure::InitiatorCertificate);
  REQUIRE(late.verdict);
  CHECK(*late.verdict == Verdict::Expired);
}

TEST_CASE("substituted ephemeral fails key confirmation") {
  Fixture fx({5, 3});
  const auto a = fx.identity("alpha");
  const auto b = fx.identity("bravo");
  const auto Y = fx.authority.master_public();
  auto [state, init] = initiate_channel(big(), a, "bravo", fx.rng);
  const auto resp = respond_channel(big(), b, init, Y, 100, fx.rng);
  REQUIRE(resp.failure == ChannelFailure::None);
  REQUIRE(resp.key);

  // Mallory swaps in her own ephemeral but cannot re-sign it as bravo
  const auto mallory = KeyPair::generate(big(), fx.rng);
  auto reply = resp.reply;
  reply.ephemeral = mallory.public_key;
  const auto fin = finish_channel(big(), state, reply, Y, 100);
  CHECK(fin.failure == ChannelFailure::KeyConfirmation);
  CHECK_FALSE(fin.key);

  // and on the way in, a swapped initiator ephemeral breaks alpha's proof
  auto [state2, init2] = initiate_channel(big(), a, "bravo", fx.rng);
  init2.ephemeral = mallory.public_key;
  CHECK(respond_channel(big(), b, init2, Y, 100, fx.rng).failure == ChannelFailure::InitiatorProof);

  const auto honest = finish_channel(big(), state, resp.reply, Y, 100);
  CHECK(honest.failure == ChannelFailure::None);
  CHECK(*honest.key == *resp.key);
}

TEST_CASE("server selection is fair across shareholders") {
  Fixture fx({10, 3});
  const auto roster = fx.all();
  std::vector<std::vector<ShareIndex>> log;
  for (int i = 0; i < 10000; ++i) {
    const auto s = fx.authority.select_servers(roster, fx.rng);
    REQUIRE(s.size() == 3);
    REQUIRE(std::is_sorted(s.begin(), s.end()));
    log.push_back(s);
  }
  const auto rep = fairness_audit(log, roster);
  CHECK(rep.mean == doctest::Approx(3000.0));
  CHECK(rep.max_over_mean < 1.15);
  CHECK(rep.never_served.empty());
}

TEST_CASE("fairness edge cases") {
  const std::vector<ShareIndex> one{1};
  const std::vector<std::vector<ShareIndex>> solo{{1}, {1}, {1}};
  CHECK(fairness_audit(solo, one).max_over_mean == 1.0);

  Fixture fx({10, 3});
  std::vector<ShareIndex> reachable = fx.all();
  reachable.erase(std::find(reachable.begin(), reachable.end(), 7u));
  std::vector<std::vector<ShareIndex>> log;
  for (int i = 0; i < 500; ++i) log.push_back(fx.authority.select_servers(reachable, fx.rng));
  const auto roster = fx.all();
  const auto rep = fairness_audit(log, roster);
  CHECK(rep.counts.at(7) == 0);
  CHECK(rep.never_served == std::vector<ShareIndex>{7});
  CHECK(fairness_audit({}, roster).max_over_mean == 0.0);
}

TEST_CASE("joins grow the roster and keep the service available") {
  Fixture fx({5, 3});
  const Warrant w{0, 1000};
  const int k = 3;
  for (int j = 0; j < k; ++j) {
    const std::string name = "joiner-" + std::to_string(j);
    const auto grant = fx.authority.request_credential(name, fx.all(), w, fx.rng);
    const auto idx = fx.authority.join(name, grant.credential, fx.all(), 5, fx.rng);
    CHECK(idx == static_cast<ShareIndex>(6 + j));
    CHECK(fx.authority.owner(idx) == name);
    const auto issue = fx.authority.last_issue();
    REQUIRE(issue);
    CHECK(mod(issue->blind_sum, big().q) == 0);
  }
  CHECK(fx.authority.shareholder_count() == 5 + k);

  // served by joiners only, plus exactly t-1 originals
  const std::vector<ShareIndex> newcomers{6, 7, 8};
  const auto g1 = fx.authority.request_credential("late-1", newcomers, w, fx.rng);
  CHECK(verify_credential(big(), g1.credential, fx.authority.master_public()));
  const std::vector<ShareIndex> mixed{2, 8};
  CHECK_THROWS_AS(fx.authority.request_credential("late-2", mixed, w, fx.rng), ServiceUnavailable);

  const auto grant = fx.authority.request_credential("joiner-0", fx.all(), w, fx.rng);
  CHECK_THROWS_AS(fx.authority.join("joiner-0", grant.credential, fx.all(), 5, fx.rng), std::invalid_argument);
  const auto g2 = fx.authority.request_credential("rogue", fx.all(), w, fx.rng);
  CHECK_THROWS_AS(fx.authority.join("rogue", g2.credential, fx.all(), 5, fx.rng, false), std::invalid_argument);
  CHECK_THROWS_AS(fx.authority.join("rogue", g2.credential, fx.all(), 5000, fx.rng), std::invalid_argument);
  CHECK_THROWS_AS(fx.authority.join("other", g2.credential, fx.all(), 5, fx.rng), std::invalid_argument);
  CHECK(fx.authority.shareholder_count() == 5 + k);
}

TEST_CASE("credential signing messages go through the tap") {
  Fixture fx({5, 3});
  const auto before = fx.authority.tap().sends();
  fx.authority.request_credential("n", fx.all(), {0, 10}, fx.rng);
  // 3 requests, 2*3*2 nonce messages, 3 partials
  CHECK(fx.authority.tap().sends() - before == 18);
}

TEST_CASE("byte helpers") {
  CHECK(to_hex(to_fixed_bytes(BigInt(0x1234), 4)) == "00001234");
  CHECK_THROWS(to_fixed_bytes(BigInt(0x10000), 2));
  CHECK(from_bytes(to_fixed_bytes(BigInt(987654321), 8)) == 987654321);
  const auto d = sha256(msg("abc"));
  CHECK(to_hex(d) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  ByteWriter w;
  w.u32(7);
  w.str("hi");
  const auto bytes = w.take();
  ByteReader r(bytes);
  CHECK(r.u32() == 7);
  CHECK(r.str() == "hi");
  CHECK(r.done());
  ByteReader t{std::span(bytes).first(5)};
  t.u32();
  CHECK_THROWS_AS(t.str(), DecodeError);
}

}
