#pragma once

// Handover signaling model.
//
// Both procedures decide with the same rule on the same radio snapshot; they
// differ only in who measures and how many messages the mobile side sends or
// receives.
//
//   UL-RS:    MSC sends one uplink reference signal (tx 1). Every BS in range
//             reports to the controller (network messages). A handover costs
//             one downlink command (rx 1).
//   baseline: the device measures each BS downlink RS (rx per BS), sends a
//             measurement report (tx 1); a handover adds the command (rx 1)
//             and a random-access transmission to the target (tx 1).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mscsim/net/topology.hpp"

namespace mscsim::handover {

struct MeasurementReport {
  NodeId bs = 0;
  double rx_dbm = 0.0;
  double time = 0.0;
};

/// Reference-signal power per base station at one instant.
using RadioSnapshot = std::vector<MeasurementReport>;

struct HandoverConfig {
  double hysteresis_db = 3.0;
  double rs_power_dbm = 23.0;       // reference-signal transmit power
  double sensitivity_dbm = -120.0;  // weakest decodable RS
  friend bool operator==(const HandoverConfig&, const HandoverConfig&) = default;
};

struct HandoverEvent {
  NodeId entity = 0;
  NodeId serving = 0;
  std::optional<NodeId> target;  // empty on radio-link failure
  std::size_t ue_tx_messages = 0;
  std::size_t ue_rx_messages = 0;
  std::size_t network_messages = 0;
  double time = 0.0;

  bool radio_link_failure() const noexcept { return !target.has_value(); }
  bool executed() const noexcept { return target && *target != serving; }
};

RadioSnapshot measure(Vec2 position, std::span<const net::BaseStation> stations,
                      const net::PathLoss& pathloss, const HandoverConfig& config, double time);

/// Shared decision rule: strongest BS in range (ties: lowest id) replaces the
/// serving BS only if it is stronger by more than the hysteresis margin, or if
/// the serving BS is no longer heard. Empty when no BS is in range.
std::optional<NodeId> decide_target(NodeId serving, const RadioSnapshot& snapshot,
                                    const HandoverConfig& config);

HandoverEvent ul_rs_handover(NodeId entity, NodeId serving, const RadioSnapshot& snapshot,
                             const HandoverConfig& config, double time);

HandoverEvent baseline_handover(NodeId entity, NodeId serving, const RadioSnapshot& snapshot,
                                const HandoverConfig& config, double time);

struct MessageEnergy {
  double tx = 1.0;
  double rx = 0.1;
  friend bool operator==(const MessageEnergy&, const MessageEnergy&) = default;
};

double ho_energy(const HandoverEvent& event, const MessageEnergy& energy) noexcept;

}  // namespace mscsim::handover
