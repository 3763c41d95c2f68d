#pragma once

// Network-coded cooperation (NCC) sessions.
//
// Cellular phase: for each generation the source sends ceil(r*g) random coded
// packets by unicast, packet k to the member with index k mod n, one per
// cellular slot, with no retransmission.
//
// Cooperative phase: TDMA slots rotate over members in index order. In its
// slot a member sends, for every generation it holds something of and that
// some other member has not decoded yet, one packet recoded from everything it
// holds, multicast over the short-range link. The phase ends once every member
// has decoded every generation, or when the session slot budget runs out.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mscsim/rlnc/coding.hpp"
#include "mscsim/rlnc/decoder.hpp"
#include "mscsim/sim/link.hpp"
#include "mscsim/sim/random.hpp"

namespace mscsim::ncc {

/// Members of one cooperative cloud, stored in index order.
class CooperativeCloud {
 public:
  CooperativeCloud(NodeId head, std::vector<sim::Endpoint> members);

  NodeId head() const noexcept { return head_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<sim::Endpoint>& members() const noexcept { return members_; }
  const sim::Endpoint& member(std::size_t index) const { return members_.at(index); }
  /// Throws std::out_of_range for a non-member.
  std::size_t index_of(NodeId id) const;

 private:
  NodeId head_;
  std::vector<sim::Endpoint> members_;
};

/// Indices follow ascending node id. Throws std::invalid_argument on an empty
/// list or duplicate ids.
CooperativeCloud assign_indices(std::span<const sim::Endpoint> members, NodeId head);
CooperativeCloud assign_indices(std::span<const NodeId> members, NodeId head);

enum class PhaseMode { Sequential, Parallel };
enum class Phase { Cellular, Cooperative };

std::string_view to_string(PhaseMode m) noexcept;
std::string_view to_string(Phase p) noexcept;

struct SessionConfig {
  std::vector<rlnc::Generation> content;
  double redundancy = 1.0;
  PhaseMode mode = PhaseMode::Sequential;
  std::size_t slot_budget = 0;  // 0 selects 4 * ceil(r*g) * #generations
  sim::LinkModel cellular = sim::LinkModel::cellular_default();
  sim::LinkModel short_range = sim::LinkModel::short_range_default();
  sim::Endpoint source;  // the base station feeding the cellular phase

  /// Throws std::invalid_argument on r < 1, empty content, a link outside its
  /// range, or a budget smaller than the number of source packets.
  void validate() const;
  std::size_t coded_per_generation(std::size_t g) const;
  std::size_t effective_slot_budget() const;
  std::size_t source_packet_count() const;
};

struct SessionMetrics {
  std::size_t members = 0;
  std::size_t generations = 0;
  std::size_t source_packets = 0;
  std::uint64_t cellular_tx_count = 0;
  std::uint64_t short_range_tx_count = 0;
  double cellular_utilization = 0.0;  // cellular_tx_count / (members * source_packets)
  double decoding_ratio = 0.0;        // decoded (member, generation) pairs / all pairs
  std::size_t decoded_pairs = 0;
  double total_energy = 0.0;
  double completion_time = 0.0;  // in cellular slot periods
  std::uint64_t cooperative_slots = 0;
  bool budget_exhausted = false;

  friend bool operator==(const SessionMetrics&, const SessionMetrics&) = default;
};

struct SlotRecord {
  std::uint64_t slot = 0;
  Phase phase = Phase::Cellular;
  NodeId sender = 0;
  std::optional<rlnc::GenerationId> generation;
  std::vector<NodeId> receivers;
  std::vector<bool> delivered;
  std::vector<bool> innovative;
  bool skipped = false;

  friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

struct PhaseLog {
  std::vector<SlotRecord> records;
  bool budget_exhausted = false;
};

class Session {
 public:
  Session(CooperativeCloud cloud, SessionConfig config, sim::RandomStream& coding,
          sim::RandomStream& channel, const gf::KernelSet& kernels = gf::active_kernels());

  /// Both phases per config.mode.
  void run();
  PhaseLog cellular_phase();
  PhaseLog cooperative_phase();

  SessionMetrics metrics() const;
  bool all_decoded() const;

  const CooperativeCloud& cloud() const noexcept { return cloud_; }
  const SessionConfig& config() const noexcept { return config_; }
  const std::vector<SlotRecord>& log() const noexcept { return log_; }
  const sim::EnergyLedger& energy() const noexcept { return ledger_; }
  const rlnc::Decoder& decoder(std::size_t member_index, std::size_t generation_index) const;
  /// Every packet the source put on the air for one generation, lost or not.
  const std::vector<rlnc::CodedPacket>& sent_by_source(std::size_t generation_index) const;

 private:
  bool budget_left() const noexcept { return slots_used_ < budget_; }
  bool cellular_done() const noexcept { return next_generation_ >= config_.content.size(); }
  bool cooperation_done() const;
  // Each returns the airtime it consumed, in cellular slot periods.
  double cellular_slot(PhaseLog& out);
  double cooperative_slot(PhaseLog& out);
  rlnc::Decoder& decoder_mut(std::size_t member, std::size_t gen);

  CooperativeCloud cloud_;
  SessionConfig config_;
  sim::RandomStream* coding_;
  sim::RandomStream* channel_;
  const gf::KernelSet* kernels_;
  std::vector<rlnc::Decoder> decoders_;  // [member * generations + generation]
  std::vector<std::vector<rlnc::CodedPacket>> sent_;
  std::vector<SlotRecord> log_;
  sim::EnergyLedger ledger_;
  std::size_t budget_;
  std::uint64_t slots_used_ = 0;
  std::uint64_t cooperative_slots_ = 0;
  std::size_t next_generation_ = 0;
  std::size_t next_packet_ = 0;
  double time_ = 0.0;
  bool exhausted_ = false;
};

SessionMetrics run_session(const CooperativeCloud& cloud, const SessionConfig& config,
                           sim::RandomStream& coding, sim::RandomStream& channel);

/// Every member receives every source packet by cellular unicast, retransmitted
/// until delivered. The comparison point for offloading.
SessionMetrics baseline_unicast_session(const CooperativeCloud& cloud, const SessionConfig& config,
                                        sim::RandomStream& channel);

}  // namespace mscsim::ncc
