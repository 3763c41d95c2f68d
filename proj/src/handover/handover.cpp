#include "mscsim/handover/handover.hpp"

#include <algorithm>

namespace mscsim::handover {

namespace {

std::size_t heard(const RadioSnapshot& snapshot, const HandoverConfig& config) {
  return static_cast<std::size_t>(std::count_if(snapshot.begin(), snapshot.end(), [&](const MeasurementReport& r) {
    return r.rx_dbm >= config.sensitivity_dbm;
  }));
}

}  // namespace

RadioSnapshot measure(Vec2 position, std::span<const net::BaseStation> stations,
                      const net::PathLoss& pathloss, const HandoverConfig& config, double time) {
  RadioSnapshot out;
  out.reserve(stations.size());
  for (const net::BaseStation& bs : stations) {
    out.push_back({bs.id, pathloss.received_dbm(config.rs_power_dbm, distance(position, bs.position)), time});
  }
  return out;
}

std::optional<NodeId> decide_target(NodeId serving, const RadioSnapshot& snapshot,
                                    const HandoverConfig& config) {
  const MeasurementReport* best = nullptr;
  const MeasurementReport* current = nullptr;
  for (const MeasurementReport& r : snapshot) {
    if (r.rx_dbm < config.sensitivity_dbm) continue;
    if (r.bs == serving) current = &r;
    if (!best || r.rx_dbm > best->rx_dbm || (r.rx_dbm == best->rx_dbm && r.bs < best->bs)) best = &r;
  }
  if (!best) return std::nullopt;
  if (!current) return best->bs;
  if (best->bs != serving && best->rx_dbm > current->rx_dbm + config.hysteresis_db) return best->bs;
  return serving;
}

HandoverEvent ul_rs_handover(NodeId entity, NodeId serving, const RadioSnapshot& snapshot,
                             const HandoverConfig& config, double time) {
  HandoverEvent ev{entity, serving, decide_target(serving, snapshot, config), 1, 0, 0, time};
  ev.network_messages = heard(snapshot, config);
  if (ev.executed()) ev.ue_rx_messages = 1;
  return ev;
}

HandoverEvent baseline_handover(NodeId entity, NodeId serving, const RadioSnapshot& snapshot,
                                const HandoverConfig& config, double time) {
  HandoverEvent ev{entity, serving, decide_target(serving, snapshot, config), 0, 0, 0, time};
  ev.ue_rx_messages = heard(snapshot, config);
  // The report goes out even when nothing was heard; it is how the failure surfaces.
  ev.ue_tx_messages = 1;
  if (ev.executed()) {
    ev.ue_rx_messages += 1;
    ev.ue_tx_messages += 1;
    ev.network_messages = 1;
  }
  return ev;
}

double ho_energy(const HandoverEvent& event, const MessageEnergy& energy) noexcept {
  return static_cast<double>(event.ue_tx_messages) * energy.tx +
         static_cast<double>(event.ue_rx_messages) * energy.rx;
}

}  // namespace mscsim::handover
