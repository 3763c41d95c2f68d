#pragma once

// One simulation run: topology at t=0, key-management bootstrap, NCC sessions
// every session_interval, and mobility + handover epochs every handover.dt,
// all dispatched through one event queue.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mscsim/handover/handover.hpp"
#include "mscsim/km/authority.hpp"
#include "mscsim/ncc/session.hpp"
#include "mscsim/net/topology.hpp"
#include "mscsim/scenario/config.hpp"

namespace mscsim::scenario {

struct HandoverAggregate {
  std::size_t epochs = 0;
  std::size_t events = 0;
  std::size_t executed = 0;
  std::size_t radio_link_failures = 0;
  std::size_t decision_mismatches = 0;
  std::uint64_t ulrs_ue_tx = 0;
  std::uint64_t ulrs_ue_rx = 0;
  std::uint64_t ulrs_network = 0;
  std::uint64_t baseline_ue_tx = 0;
  std::uint64_t baseline_ue_rx = 0;
  std::uint64_t baseline_network = 0;
  std::uint64_t ulrs_ue_tx_executed = 0;      // summed over executed handovers only
  std::uint64_t baseline_ue_tx_executed = 0;
  double ulrs_energy = 0.0;
  double baseline_energy = 0.0;

  friend bool operator==(const HandoverAggregate&, const HandoverAggregate&) = default;
};

struct KmAggregate {
  bool enabled = false;
  std::size_t requests = 0;
  std::size_t served = 0;
  std::size_t unavailable = 0;
  std::size_t certificates = 0;
  std::size_t certificates_verified = 0;
  std::uint64_t certificate_sends = 0;  // network sends during self-generation; 0 by construction
  std::size_t joins = 0;
  std::size_t join_failures = 0;
  std::size_t channels_attempted = 0;
  std::size_t channels_established = 0;
  std::size_t shareholders = 0;  // roster size at the end
  std::uint64_t messages = 0;
  std::size_t violations = 0;
  double fairness_max_over_mean = 0.0;
  std::size_t never_served = 0;

  friend bool operator==(const KmAggregate&, const KmAggregate&) = default;
};

struct SessionRecord {
  std::size_t index = 0;
  double start_time = 0.0;
  bool skipped = false;
  std::string skip_reason;
  std::optional<NodeId> head;
  std::optional<NodeId> gateway;
  ncc::SessionMetrics metrics;
  std::vector<ncc::SlotRecord> slots;  // only with output.slot_log
};

struct ReselectionRecord {
  double time = 0.0;
  net::ReselectionTrigger trigger{};
  std::optional<NodeId> old_head;
  std::optional<NodeId> new_head;
};

struct HandoverRecord {
  handover::HandoverEvent ulrs;
  handover::HandoverEvent baseline;
};

struct TopologySnapshot {
  std::vector<net::BaseStation> stations;
  std::vector<net::Node> ues;
  std::optional<net::MobileSmallCell> msc;
};

struct RunSummary {
  std::size_t sessions_run = 0;
  std::size_t sessions_skipped = 0;
  std::uint64_t cellular_tx = 0;
  std::uint64_t short_range_tx = 0;
  std::uint64_t unicast_equivalent = 0;  // sum of members * source packets
  std::size_t decoded_pairs = 0;
  std::size_t total_pairs = 0;
  double decoding_ratio = 0.0;
  double cellular_utilization = 0.0;
  double total_energy = 0.0;
  std::size_t budget_exhausted = 0;
  std::size_t reselections = 0;
  std::size_t events = 0;
  std::string trace_digest;
  HandoverAggregate handover;
  KmAggregate km;
};

struct RunResult {
  bool ok = true;
  std::string error;
  std::string run_id;
  std::string scenario_hash;
  TopologySnapshot topology;
  std::vector<km::TranscriptEntry> km_transcript;
  std::vector<SessionRecord> sessions;
  std::vector<ReselectionRecord> reselections;
  std::vector<HandoverRecord> handovers;  // only with output.handover_log
  RunSummary summary;
};

std::string make_run_id(const Scenario& s);

/// Never throws for simulation failures; they come back as ok = false with
/// whatever was produced before the failure.
RunResult run_scenario(const Scenario& s);

}  // namespace mscsim::scenario
