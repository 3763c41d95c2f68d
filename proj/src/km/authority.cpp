#include "mscsim/km/authority.hpp"

#include <algorithm>

namespace mscsim::km {

KeyShare issue_share(const GroupParams& params, ShareIndex x_new, std::span<const KeyShare> servers,
                     std::size_t threshold, sim::RandomStream& rng, IssueTranscript* transcript) {
  if (threshold < 1) throw std::invalid_argument("issue_share: threshold must be at least 1");
  if (servers.size() < threshold) {
    throw ServiceUnavailable("issue_share: " + std::to_string(servers.size()) + " servers, need " +
                             std::to_string(threshold));
  }
  if (x_new == 0) throw std::invalid_argument("issue_share: index 0 is reserved for the secret");
  for (const auto& s : servers) {
    if (s.index == x_new) throw std::invalid_argument("issue_share: index " + std::to_string(x_new) + " already in use");
  }
  const std::span<const KeyShare> quorum = servers.first(threshold);
  std::vector<ShareIndex> xs;
  for (const auto& s : quorum) xs.push_back(s.index);

  IssueTranscript tr;
  tr.new_index = x_new;
  tr.servers = xs;
  std::map<ShareIndex, BigInt> net;
  for (ShareIndex x : xs) net[x] = 0;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      const BigInt r = mod(random_scalar(params, rng), params.q);
      net[xs[a]] = mod(net[xs[a]] + r, params.q);
      net[xs[b]] = mod(net[xs[b]] - r, params.q);
      tr.blinds.push_back({xs[a], xs[b], r});
    }
  }

  BigInt value = 0;
  BigInt blind_sum = 0;
  for (const auto& s : quorum) {
    const BigInt lambda = lagrange_coefficient(xs, s.index, BigInt(x_new), params.q);
    const BigInt blinded = mod(lambda * s.value + net[s.index], params.q);
    tr.blinded[s.index] = blinded;
    value = mod(value + blinded, params.q);
    blind_sum = mod(blind_sum + net[s.index], params.q);
  }
  tr.blind_sum = blind_sum;
  if (transcript) *transcript = std::move(tr);
  return {x_new, value};
}

DistributedAuthority::DistributedAuthority(GroupParams params, KMConfig config, Dealing dealing)
    : params_{std::move(params)}, config_{config}, master_public_{dealing.master.public_key} {
  config_.validate();
  dealing.master.secret = 0;
  if (dealing.shares.size() < config_.t) throw std::invalid_argument("DistributedAuthority: fewer shares than t");
  for (auto& s : dealing.shares) {
    const ShareIndex idx = s.index;
    if (!shareholders_.emplace(idx, std::make_unique<Shareholder>(std::move(s))).second) {
      throw std::invalid_argument("DistributedAuthority: duplicate share index " + std::to_string(idx));
    }
  }
}

std::vector<ShareIndex> DistributedAuthority::roster() const {
  std::lock_guard lock(mutex_);
  std::vector<ShareIndex> out;
  for (const auto& [idx, h] : shareholders_) out.push_back(idx);
  return out;
}

std::size_t DistributedAuthority::shareholder_count() const {
  std::lock_guard lock(mutex_);
  return shareholders_.size();
}

const Shareholder& DistributedAuthority::shareholder(ShareIndex index) const {
  std::lock_guard lock(mutex_);
  auto it = shareholders_.find(index);
  if (it == shareholders_.end()) throw std::out_of_range("no shareholder with index " + std::to_string(index));
  return *it->second;
}

Shareholder& DistributedAuthority::holder_locked(ShareIndex index) {
  std::lock_guard lock(mutex_);
  auto it = shareholders_.find(index);
  if (it == shareholders_.end()) throw std::out_of_range("no shareholder with index " + std::to_string(index));
  return *it->second;
}

void DistributedAuthority::set_owner(ShareIndex index, std::string node) {
  std::lock_guard lock(mutex_);
  if (!shareholders_.count(index)) throw std::out_of_range("no shareholder with index " + std::to_string(index));
  owners_[index] = std::move(node);
}

std::optional<std::string> DistributedAuthority::owner(ShareIndex index) const {
  std::lock_guard lock(mutex_);
  auto it = owners_.find(index);
  if (it == owners_.end()) return std::nullopt;
  return it->second;
}

std::optional<ShareIndex> DistributedAuthority::index_of(const std::string& node) const {
  std::lock_guard lock(mutex_);
  for (const auto& [idx, name] : owners_) {
    if (name == node) return idx;
  }
  return std::nullopt;
}

void DistributedAuthority::log(TranscriptEntry entry) {
  std::lock_guard lock(mutex_);
  transcript_.push_back(std::move(entry));
}

std::vector<ShareIndex> DistributedAuthority::select_servers(std::span<const ShareIndex> reachable,
                                                             sim::RandomStream& rng) const {
  std::vector<ShareIndex> pool;
  {
    std::lock_guard lock(mutex_);
    for (ShareIndex x : reachable) {
      if (shareholders_.count(x) && std::find(pool.begin(), pool.end(), x) == pool.end()) pool.push_back(x);
    }
  }
  if (pool.size() < config_.t) {
    throw ServiceUnavailable(std::to_string(pool.size()) + " shareholders reachable, threshold is " +
                             std::to_string(config_.t));
  }
  // Partial Fisher-Yates over a canonical order.
  std::sort(pool.begin(), pool.end());
  for (std::size_t i = 0; i < config_.t; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(config_.t);
  std::sort(pool.begin(), pool.end());
  return pool;
}

ProxyCredential DistributedAuthority::sign_credential(const std::string& holder, const BigInt& holder_public_key,
                                                      const Warrant& warrant, std::span<const ShareIndex> servers,
                                                      sim::RandomStream& rng) {
  if (servers.size() < config_.t) {
    throw ServiceUnavailable("sign_credential: " + std::to_string(servers.size()) + " servers, threshold is " +
                             std::to_string(config_.t));
  }
  const Bytes body = credential_body(params_, holder, holder_public_key, warrant);
  const std::uint64_t session = next_session_.fetch_add(1);
  const std::vector<NonceShare> nonces = joint_nonce(params_, session, servers, config_.t, rng);
  const std::uint64_t m = servers.size();
  // commitments and reveals all-to-all, then one partial each to the requester
  tap_.record(2 * m * (m - 1) + m);

  std::vector<PartialSignature> partials;
  for (std::size_t i = 0; i < servers.size(); ++i) {
    partials.push_back(holder_locked(servers[i]).partial_sign(params_, master_public_, body, nonces[i]));
  }
  ProxyCredential cred{holder, holder_public_key, warrant, combine_partials(params_, partials, config_.t)};
  if (!verify_credential(params_, cred, master_public_)) {
    throw ProtocolViolation("combined credential signature does not verify");
  }
  return cred;
}

CredentialGrant DistributedAuthority::request_credential(const std::string& requester,
                                                         std::span<const ShareIndex> reachable,
                                                         const Warrant& warrant, sim::RandomStream& rng) {
  CredentialGrant grant;
  try {
    grant.servers = select_servers(reachable, rng);
  } catch (const ServiceUnavailable& e) {
    log({"credential", requester, {}, std::string("unavailable: ") + e.what()});
    throw;
  }
  grant.proxy_keys = KeyPair::generate(params_, rng);
  tap_.record(grant.servers.size());  // the request itself
  grant.credential = sign_credential(requester, grant.proxy_keys.public_key, warrant, grant.servers, rng);
  {
    std::lock_guard lock(mutex_);
    service_log_.push_back(grant.servers);
  }
  log({"credential", requester, grant.servers, "ok"});
  return grant;
}

ShareIndex DistributedAuthority::join(const std::string& node, const ProxyCredential& credential,
                                      std::span<const ShareIndex> reachable, std::int64_t now,
                                      sim::RandomStream& rng, bool authorized) {
  auto refuse = [&](const std::string& why) -> ShareIndex {
    log({"join", node, {}, why});
    throw std::invalid_argument("join refused for " + node + ": " + why);
  };
  if (!authorized) return refuse("not authorized by the network");
  if (index_of(node)) return refuse("already a shareholder");
  if (credential.holder != node || !verify_credential(params_, credential, master_public_) ||
      !credential.warrant.covers(now)) {
    return refuse("no valid credential");
  }

  std::vector<ShareIndex> servers;
  try {
    servers = select_servers(reachable, rng);
  } catch (const ServiceUnavailable& e) {
    log({"join", node, {}, std::string("unavailable: ") + e.what()});
    throw;
  }
  std::vector<KeyShare> quorum;
  for (ShareIndex x : servers) quorum.push_back(holder_locked(x).share());

  std::lock_guard lock(mutex_);
  const ShareIndex x_new = shareholders_.rbegin()->first + 1;
  IssueTranscript tr;
  KeyShare share = issue_share(params_, x_new, quorum, config_.t, rng, &tr);
  const std::uint64_t m = servers.size();
  tap_.record(m + m * (m - 1) / 2 + m);  // request, pairwise blinds, contributions
  shareholders_.emplace(x_new, std::make_unique<Shareholder>(std::move(share)));
  owners_[x_new] = node;
  last_issue_ = std::move(tr);
  service_log_.push_back(servers);
  transcript_.push_back({"join", node, servers, "ok"});
  return x_new;
}

std::vector<TranscriptEntry> DistributedAuthority::transcript() const {
  std::lock_guard lock(mutex_);
  return transcript_;
}

std::vector<std::vector<ShareIndex>> DistributedAuthority::service_log() const {
  std::lock_guard lock(mutex_);
  return service_log_;
}

std::optional<IssueTranscript> DistributedAuthority::last_issue() const {
  std::lock_guard lock(mutex_);
  return last_issue_;
}

FairnessReport fairness_audit(std::span<const std::vector<ShareIndex>> service_log,
                              std::span<const ShareIndex> shareholders) {
  FairnessReport r;
  for (ShareIndex x : shareholders) r.counts[x] = 0;
  for (const auto& served : service_log) {
    for (ShareIndex x : served) {
      auto it = r.counts.find(x);
      if (it != r.counts.end()) ++it->second;
    }
  }
  if (r.counts.empty()) return r;
  std::size_t total = 0, peak = 0;
  for (const auto& [x, c] : r.counts) {
    total += c;
    peak = std::max(peak, c);
    if (c == 0) r.never_served.push_back(x);
  }
  r.mean = static_cast<double>(total) / static_cast<double>(r.counts.size());
  r.max_over_mean = r.mean > 0 ? static_cast<double>(peak) / r.mean : 0.0;
  return r;
}

}  // namespace mscsim::km
