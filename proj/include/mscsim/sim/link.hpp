#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscsim/sim/random.hpp"
#include "mscsim/sim/types.hpp"

namespace mscsim::sim {

enum class LinkKind { Cellular, ShortRange };

std::string_view to_string(LinkKind kind) noexcept;

struct LinkModel {
  LinkKind kind = LinkKind::Cellular;
  double rate = 1.0;        // packets per slot
  double loss = 0.0;        // erasure probability, in [0, 1)
  double tx_energy = 1.0;   // per transmitted packet
  double rx_energy = 0.1;   // per packet heard by an in-range receiver
  double range = 1000.0;    // meters

  static LinkModel cellular_default();
  static LinkModel short_range_default();

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const LinkModel&, const LinkModel&) = default;
};

struct Endpoint {
  NodeId id = 0;
  Vec2 position;
};

enum class Delivery : std::uint8_t { Delivered, Erased, OutOfRange };

std::string_view to_string(Delivery d) noexcept;

struct Reception {
  NodeId receiver;
  Delivery outcome;

  friend bool operator==(const Reception&, const Reception&) = default;
};

struct TxRecord {
  double time = 0.0;
  LinkKind kind = LinkKind::Cellular;
  NodeId sender = 0;
  std::string label;
  std::vector<Reception> receptions;
  double tx_energy = 0.0;  // charged to the sender
  double rx_energy = 0.0;  // charged to each in-range receiver

  friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

struct NodeEnergy {
  double tx = 0.0;
  double rx = 0.0;
  double total() const noexcept { return tx + rx; }
  friend bool operator==(const NodeEnergy&, const NodeEnergy&) = default;
};

struct EnergyReport {
  std::map<NodeId, NodeEnergy> per_node;
  std::array<double, 2> per_kind{};  // indexed by LinkKind
  std::array<std::uint64_t, 2> transmissions{};
  double total = 0.0;

  double kind_total(LinkKind k) const noexcept { return per_kind[static_cast<std::size_t>(k)]; }
  std::uint64_t kind_count(LinkKind k) const noexcept {
    return transmissions[static_cast<std::size_t>(k)];
  }
};

/// Live energy accounting plus the transmission log it was derived from.
class EnergyLedger {
 public:
  explicit EnergyLedger(bool keep_log = true) : keep_log_{keep_log} {}

  void record(TxRecord rec);
  const EnergyReport& energy_report() const noexcept { return report_; }
  const std::vector<TxRecord>& log() const noexcept { return log_; }

 private:
  bool keep_log_;
  EnergyReport report_;
  std::vector<TxRecord> log_;
};

struct TransmitResult {
  std::vector<Reception> receptions;
  double energy = 0.0;

  bool delivered(std::size_t i) const { return receptions.at(i).outcome == Delivery::Delivered; }
};

/// One transmission from sender to each receiver. Receivers beyond link range
/// are marked OutOfRange and consume no randomness; each in-range receiver is
/// independently erased with probability link.loss. The sender pays tx_energy
/// once regardless of how many receivers there are.
TransmitResult transmit(const LinkModel& link, const Endpoint& sender,
                        std::span<const Endpoint> receivers, RandomStream& rng,
                        EnergyLedger& ledger, double time = 0.0, std::string label = {});

}  // namespace mscsim::sim
