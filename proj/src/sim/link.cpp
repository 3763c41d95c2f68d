#include "mscsim/sim/link.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mscsim::sim {

std::string_view to_string(LinkKind kind) noexcept {
  return kind == LinkKind::Cellular ? "cellular" : "short_range";
}

std::string_view to_string(Delivery d) noexcept {
  switch (d) {
    case Delivery::Delivered: return "delivered";
    case Delivery::Erased: return "erased";
    case Delivery::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

LinkModel LinkModel::cellular_default() {
  return LinkModel{LinkKind::Cellular, 1.0, 0.0, 1.0, 0.1, 1000.0};
}

LinkModel LinkModel::short_range_default() {
  return LinkModel{LinkKind::ShortRange, 4.0, 0.0, 0.2, 0.02, 50.0};
}

void LinkModel::validate() const {
  const std::string name{to_string(kind)};
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument(name + ".rate must be > 0");
  if (!(loss >= 0.0 && loss < 1.0)) throw std::invalid_argument(name + ".loss must be in [0, 1)");
  if (!(tx_energy >= 0.0)) throw std::invalid_argument(name + ".tx_energy must be >= 0");
  if (!(rx_energy >= 0.0)) throw std::invalid_argument(name + ".rx_energy must be >= 0");
  if (!(range > 0.0)) throw std::invalid_argument(name + ".range must be > 0");
}

void EnergyLedger::record(TxRecord rec) {
  const auto k = static_cast<std::size_t>(rec.kind);
  report_.per_node[rec.sender].tx += rec.tx_energy;
  report_.per_kind[k] += rec.tx_energy;
  report_.total += rec.tx_energy;
  report_.transmissions[k] += 1;
  for (const Reception& r : rec.receptions) {
    if (r.outcome == Delivery::OutOfRange) continue;
    report_.per_node[r.receiver].rx += rec.rx_energy;
    report_.per_kind[k] += rec.rx_energy;
    report_.total += rec.rx_energy;
  }
  if (keep_log_) log_.push_back(std::move(rec));
}

TransmitResult transmit(const LinkModel& link, const Endpoint& sender,
                        std::span<const Endpoint> receivers, RandomStream& rng,
                        EnergyLedger& ledger, double time, std::string label) {
  TransmitResult result;
  result.receptions.reserve(receivers.size());
  std::size_t in_range = 0;
  for (const Endpoint& rx : receivers) {
    Delivery outcome = Delivery::OutOfRange;
    if (distance(sender.position, rx.position) <= link.range) {
      ++in_range;
      outcome = (link.loss > 0.0 && rng.bernoulli(link.loss)) ? Delivery::Erased : Delivery::Delivered;
    }
    result.receptions.push_back({rx.id, outcome});
  }
  result.energy = link.tx_energy + link.rx_energy * static_cast<double>(in_range);
  ledger.record(TxRecord{time, link.kind, sender.id, std::move(label), result.receptions,
                         link.tx_energy, link.rx_energy});
  return result;
}

}  // namespace mscsim::sim
