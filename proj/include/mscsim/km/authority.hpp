#pragma once

// The fully distributed authority: shareholders that together act as the
// trusted third party once the initial dealer has gone.
//
// All shareholder state lives in one simulation-owned object. Requests served
// by disjoint server sets may run concurrently; they only serialize on the
// roster lock, which also guards the logs.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mscsim/km/certificate.hpp"

namespace mscsim::km {

class ServiceUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts simulated messages exchanged by key-management protocols.
class NetworkTap {
 public:
  void record(std::uint64_t messages = 1) noexcept { sends_.fetch_add(messages, std::memory_order_relaxed); }
  std::uint64_t sends() const noexcept { return sends_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> sends_{0};
};

struct TranscriptEntry {
  std::string request;  // "credential" or "join"
  std::string requester;
  std::vector<ShareIndex> participants;
  std::string outcome;  // "ok" or the failure reason
};

struct PairBlind {
  ShareIndex plus;   // adds the blind
  ShareIndex minus;  // subtracts it
  BigInt value;
};

/// What an observer of issue_share gets to see.
struct IssueTranscript {
  ShareIndex new_index = 0;
  std::vector<ShareIndex> servers;
  std::map<ShareIndex, BigInt> blinded;  // lambda_i(x_new) * s_i + net blind of i
  std::vector<PairBlind> blinds;
  BigInt blind_sum;                      // zero mod q on an honest run
};

/// f(x_new) from exactly the first `threshold` servers, with pairwise zero-sum
/// blinding. Throws ServiceUnavailable with fewer servers and
/// std::invalid_argument if x_new collides with a server index or is zero.
KeyShare issue_share(const GroupParams& params, ShareIndex x_new, std::span<const KeyShare> servers,
                     std::size_t threshold, sim::RandomStream& rng, IssueTranscript* transcript = nullptr);

struct CredentialGrant {
  ProxyCredential credential;
  KeyPair proxy_keys;  // generated by the requester itself
  std::vector<ShareIndex> servers;
};

class DistributedAuthority {
 public:
  /// Takes the dealt shares. The master secret is not retained.
  DistributedAuthority(GroupParams params, KMConfig config, Dealing dealing);

  DistributedAuthority(const DistributedAuthority&) = delete;
  DistributedAuthority& operator=(const DistributedAuthority&) = delete;

  const GroupParams& params() const noexcept { return params_; }
  const BigInt& master_public() const noexcept { return master_public_; }
  std::size_t threshold() const noexcept { return config_.t; }

  std::vector<ShareIndex> roster() const;
  std::size_t shareholder_count() const;
  const Shareholder& shareholder(ShareIndex index) const;
  void set_owner(ShareIndex index, std::string node);
  std::optional<std::string> owner(ShareIndex index) const;
  std::optional<ShareIndex> index_of(const std::string& node) const;

  /// t servers uniformly at random among the reachable shareholders. Throws
  /// ServiceUnavailable when fewer than t of them are on the roster.
  std::vector<ShareIndex> select_servers(std::span<const ShareIndex> reachable, sim::RandomStream& rng) const;

  /// Threshold signature by exactly the given servers.
  ProxyCredential sign_credential(const std::string& holder, const BigInt& holder_public_key, const Warrant& warrant,
                                  std::span<const ShareIndex> servers, sim::RandomStream& rng);

  CredentialGrant request_credential(const std::string& requester, std::span<const ShareIndex> reachable,
                                     const Warrant& warrant, sim::RandomStream& rng);

  /// Issues the next roster index to a credentialed node. Throws
  /// std::invalid_argument for a node that is unauthorized, already holds a
  /// share, or lacks a credential valid at `now`.
  ShareIndex join(const std::string& node, const ProxyCredential& credential, std::span<const ShareIndex> reachable,
                  std::int64_t now, sim::RandomStream& rng, bool authorized = true);

  std::vector<TranscriptEntry> transcript() const;
  std::vector<std::vector<ShareIndex>> service_log() const;
  std::optional<IssueTranscript> last_issue() const;
  NetworkTap& tap() noexcept { return tap_; }
  const NetworkTap& tap() const noexcept { return tap_; }

 private:
  Shareholder& holder_locked(ShareIndex index);
  void log(TranscriptEntry entry);

  GroupParams params_;
  KMConfig config_;
  BigInt master_public_;
  std::map<ShareIndex, std::unique_ptr<Shareholder>> shareholders_;
  std::map<ShareIndex, std::string> owners_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<std::vector<ShareIndex>> service_log_;
  std::optional<IssueTranscript> last_issue_;
  std::atomic<std::uint64_t> next_session_{1};
  NetworkTap tap_;
  mutable std::mutex mutex_;
};

struct FairnessReport {
  std::map<ShareIndex, std::size_t> counts;
  double mean = 0.0;
  double max_over_mean = 0.0;  // 0 when nobody served at all
  std::vector<ShareIndex> never_served;
};

FairnessReport fairness_audit(std::span<const std::vector<ShareIndex>> service_log,
                              std::span<const ShareIndex> shareholders);

}  // namespace mscsim::km
