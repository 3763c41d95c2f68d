#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mscsim/sim/types.hpp"

namespace mscsim::net {

enum class NodeKind { BaseStation, UE };
enum class Role { Mch, Member, Idle, Gateway };

std::string_view to_string(NodeKind k) noexcept;
std::string_view to_string(Role r) noexcept;

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::UE;
  Vec2 position;
  Vec2 velocity;      // m/s
  double battery = 1.0;
  Role role = Role::Idle;
  bool active = true;
  // random-waypoint state
  Vec2 waypoint;
  double speed = 0.0;
  bool has_waypoint = false;
};

struct BaseStation {
  NodeId id = 0;
  Vec2 position;
  double tx_power_dbm = 46.0;
};

/// Log-distance pathloss PL(d) = PL0 + 10*alpha*log10(d/d0), with d clamped to d0.
struct PathLoss {
  double pl0_db = 40.0;
  double d0 = 1.0;
  double exponent = 3.5;

  double loss_db(double d) const noexcept;
  double received_dbm(double tx_dbm, double d) const noexcept { return tx_dbm - loss_db(d); }

  friend bool operator==(const PathLoss&, const PathLoss&) = default;
};

struct ElectionPolicy {
  double battery_weight = 0.5;
  double link_weight = 0.3;
  double degree_weight = 0.2;
  double hysteresis = 0.05;
  double battery_threshold = 0.1;

  /// Weights nonnegative and summing to 1; throws std::invalid_argument.
  void validate() const;

  friend bool operator==(const ElectionPolicy&, const ElectionPolicy&) = default;
};

struct MobileSmallCell {
  std::uint32_t id = 0;
  std::optional<NodeId> head;
  std::vector<NodeId> members;  // ascending; includes the head
  double radius = 0.0;
  std::optional<NodeId> gateway;
  double gateway_rx_dbm = 0.0;

  bool dissolved() const noexcept { return !head.has_value(); }
  bool contains(NodeId id) const noexcept;
};

/// Score in [0, 1]: battery, mean link quality to the other pool nodes within
/// 2*radius (quality 1 - d/(2*radius)), and degree (pool nodes within radius,
/// normalised by pool size - 1).
double election_score(const Node& candidate, std::span<const Node> pool,
                      const ElectionPolicy& policy, double radius);

/// Elects the argmax-score candidate (ties: lowest id) and gathers the
/// candidates within radius of it. Throws std::invalid_argument on an empty
/// set or candidates farther than 2*radius apart.
MobileSmallCell form_msc(std::uint32_t msc_id, std::span<const Node> candidates,
                         const ElectionPolicy& policy, double radius);

enum class ReselectionTrigger { BatteryBelowThreshold, NewCapableNodeInRange, QosRequest, HeadLeftCoverage };

std::string_view to_string(ReselectionTrigger t) noexcept;

/// Re-runs the election.
///
/// Candidates are the pool nodes within radius of the current head, or for
/// HeadLeftCoverage the current members other than the head. Only active UEs
/// at or above the battery threshold are eligible. The incumbent keeps the
/// role unless it became ineligible or a challenger beats its score by more
/// than the hysteresis margin. The cell is returned dissolved when nobody is
/// eligible or when the new head would have no member to serve.
MobileSmallCell reselect_mch(const MobileSmallCell& msc, std::span<const Node> pool,
                             ReselectionTrigger trigger, const ElectionPolicy& policy);

/// Battery and coverage checks the runner evaluates each step.
std::optional<ReselectionTrigger> detect_trigger(const MobileSmallCell& msc,
                                                 std::span<const Node> pool,
                                                 const ElectionPolicy& policy);

/// Picks the base station with the highest received power at the head
/// (ties: lowest id). Throws std::invalid_argument if there is none.
MobileSmallCell associate_gateway(MobileSmallCell msc, Vec2 head_position,
                                  std::span<const BaseStation> stations, const PathLoss& pathloss);

}  // namespace mscsim::net
