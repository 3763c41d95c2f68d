#include "mscsim/ncc/session.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mscsim::ncc {

CooperativeCloud::CooperativeCloud(NodeId head, std::vector<sim::Endpoint> members)
    : head_{head}, members_{std::move(members)} {}

std::size_t CooperativeCloud::index_of(NodeId id) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].id == id) return i;
  }
  throw std::out_of_range("CooperativeCloud: node " + std::to_string(id) + " is not a member");
}

CooperativeCloud assign_indices(std::span<const sim::Endpoint> members, NodeId head) {
  if (members.empty()) throw std::invalid_argument("assign_indices: empty member list");
  std::vector<sim::Endpoint> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const sim::Endpoint& a, const sim::Endpoint& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].id == sorted[i - 1].id) {
      throw std::invalid_argument("assign_indices: duplicate node id " + std::to_string(sorted[i].id));
    }
  }
  return CooperativeCloud(head, std::move(sorted));
}

CooperativeCloud assign_indices(std::span<const NodeId> members, NodeId head) {
  std::vector<sim::Endpoint> eps;
  eps.reserve(members.size());
  for (NodeId id : members) eps.push_back({id, {}});
  return assign_indices(eps, head);
}

std::string_view to_string(PhaseMode m) noexcept {
  return m == PhaseMode::Sequential ? "sequential" : "parallel";
}

std::string_view to_string(Phase p) noexcept {
  return p == Phase::Cellular ? "cellular" : "cooperative";
}

void SessionConfig::validate() const {
  if (!(redundancy >= 1.0) || !std::isfinite(redundancy)) {
    throw std::invalid_argument("SessionConfig: redundancy must be >= 1");
  }
  if (content.empty()) throw std::invalid_argument("SessionConfig: no generations to send");
  cellular.validate();
  short_range.validate();
  if (cellular.kind != sim::LinkKind::Cellular || short_range.kind != sim::LinkKind::ShortRange) {
    throw std::invalid_argument("SessionConfig: link kinds are swapped");
  }
  if (slot_budget != 0 && slot_budget < source_packet_count()) {
    throw std::invalid_argument("SessionConfig: slot budget must cover at least g slots per generation");
  }
}

std::size_t SessionConfig::coded_per_generation(std::size_t g) const {
  // The epsilon keeps products like 1.0 * 64 from rounding up to 65.
  return static_cast<std::size_t>(std::ceil(redundancy * static_cast<double>(g) - 1e-9));
}

std::size_t SessionConfig::effective_slot_budget() const {
  if (slot_budget != 0) return slot_budget;
  std::size_t total = 0;
  for (const auto& gen : content) total += 4 * coded_per_generation(gen.size());
  return total;
}

std::size_t SessionConfig::source_packet_count() const {
  std::size_t total = 0;
  for (const auto& gen : content) total += gen.size();
  return total;
}

Session::Session(CooperativeCloud cloud, SessionConfig config, sim::RandomStream& coding,
                 sim::RandomStream& channel, const gf::KernelSet& kernels)
    : cloud_{std::move(cloud)},
      config_{std::move(config)},
      coding_{&coding},
      channel_{&channel},
      kernels_{&kernels},
      sent_(config_.content.size()) {
  config_.validate();
  if (cloud_.size() == 0) throw std::invalid_argument("Session: empty cooperative cloud");
  budget_ = config_.effective_slot_budget();
  decoders_.reserve(cloud_.size() * config_.content.size());
  for (std::size_t m = 0; m < cloud_.size(); ++m) {
    for (const auto& gen : config_.content) {
      decoders_.emplace_back(gen.id(), gen.size(), gen.payload_length(), kernels);
    }
  }
}

rlnc::Decoder& Session::decoder_mut(std::size_t member, std::size_t gen) {
  return decoders_[member * config_.content.size() + gen];
}

const rlnc::Decoder& Session::decoder(std::size_t member_index, std::size_t generation_index) const {
  if (member_index >= cloud_.size() || generation_index >= config_.content.size()) {
    throw std::out_of_range("Session::decoder");
  }
  return decoders_[member_index * config_.content.size() + generation_index];
}

const std::vector<rlnc::CodedPacket>& Session::sent_by_source(std::size_t generation_index) const {
  return sent_.at(generation_index);
}

bool Session::all_decoded() const {
  return std::all_of(decoders_.begin(), decoders_.end(),
                     [](const rlnc::Decoder& d) { return d.decodable(); });
}

bool Session::cooperation_done() const {
  return cloud_.size() < 2 || all_decoded();
}

double Session::cellular_slot(PhaseLog& out) {
  const rlnc::Generation& gen = config_.content[next_generation_];
  const rlnc::Symbols coeffs = rlnc::draw_coeffs(*coding_, gen.size());
  rlnc::CodedPacket pkt = rlnc::encode(gen, coeffs, *kernels_);

  const std::size_t member = next_packet_ % cloud_.size();
  const sim::Endpoint rx = cloud_.member(member);
  const sim::TransmitResult res = sim::transmit(config_.cellular, config_.source, std::span(&rx, 1),
                                                *channel_, ledger_, time_, "cellular");
  const bool delivered = res.delivered(0);
  const bool innovative = delivered && decoder_mut(member, next_generation_).ingest(pkt);

  SlotRecord rec{slots_used_, Phase::Cellular, config_.source.id, gen.id(), {rx.id}, {delivered},
                 {innovative}, false};
  out.records.push_back(rec);
  log_.push_back(std::move(rec));
  sent_[next_generation_].push_back(std::move(pkt));

  ++slots_used_;
  if (++next_packet_ == config_.coded_per_generation(gen.size())) {
    ++next_generation_;
    next_packet_ = 0;
  }
  return 1.0 / config_.cellular.rate;
}

double Session::cooperative_slot(PhaseLog& out) {
  const std::size_t n = cloud_.size();
  const std::size_t s = static_cast<std::size_t>(cooperative_slots_ % n);
  const sim::Endpoint& sender = cloud_.member(s);
  std::vector<sim::Endpoint> receivers;
  std::vector<std::size_t> receiver_index;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == s) continue;
    receivers.push_back(cloud_.member(j));
    receiver_index.push_back(j);
  }

  std::size_t sent = 0;
  for (std::size_t gi = 0; gi < config_.content.size(); ++gi) {
    const rlnc::Decoder& mine = decoder_mut(s, gi);
    if (mine.rank() == 0) continue;
    const bool needed = std::any_of(receiver_index.begin(), receiver_index.end(),
                                    [&](std::size_t j) { return !decoder_mut(j, gi).decodable(); });
    if (!needed) continue;

    const rlnc::CodedPacket pkt = mine.recode(*coding_);
    const sim::TransmitResult res = sim::transmit(config_.short_range, sender, receivers, *channel_,
                                                  ledger_, time_, "cooperative");
    SlotRecord rec{slots_used_, Phase::Cooperative, sender.id, config_.content[gi].id(), {}, {}, {}, false};
    for (std::size_t r = 0; r < receivers.size(); ++r) {
      const bool delivered = res.delivered(r);
      rec.receivers.push_back(receivers[r].id);
      rec.delivered.push_back(delivered);
      rec.innovative.push_back(delivered && decoder_mut(receiver_index[r], gi).ingest(pkt));
    }
    out.records.push_back(rec);
    log_.push_back(std::move(rec));
    ++sent;
  }
  if (sent == 0) {
    SlotRecord rec{slots_used_, Phase::Cooperative, sender.id, std::nullopt, {}, {}, {}, true};
    out.records.push_back(rec);
    log_.push_back(std::move(rec));
  }
  ++cooperative_slots_;
  ++slots_used_;
  // An idle TDMA slot still occupies one packet airtime.
  return static_cast<double>(std::max<std::size_t>(sent, 1)) / config_.short_range.rate;
}

PhaseLog Session::cellular_phase() {
  PhaseLog out;
  while (!cellular_done()) {
    if (!budget_left()) {
      out.budget_exhausted = exhausted_ = true;
      break;
    }
    time_ += cellular_slot(out);
  }
  return out;
}

PhaseLog Session::cooperative_phase() {
  PhaseLog out;
  while (!cooperation_done()) {
    if (!budget_left()) {
      out.budget_exhausted = exhausted_ = true;
      break;
    }
    time_ += cooperative_slot(out);
  }
  return out;
}

void Session::run() {
  if (config_.mode == PhaseMode::Sequential) {
    cellular_phase();
    cooperative_phase();
    return;
  }
  // Parallel: one cellular slot and one cooperative slot per step, on separate radios.
  PhaseLog scratch;
  for (;;) {
    const bool cell = !cellular_done();
    const bool coop = !cooperation_done();
    if (!cell && !coop) break;
    if (!budget_left()) {
      exhausted_ = true;
      break;
    }
    double dt = 0.0;
    if (cell) dt = cellular_slot(scratch);
    if (coop && budget_left()) dt = std::max(dt, cooperative_slot(scratch));
    time_ += dt;
  }
}

SessionMetrics Session::metrics() const {
  SessionMetrics m;
  m.members = cloud_.size();
  m.generations = config_.content.size();
  m.source_packets = config_.source_packet_count();
  const sim::EnergyReport& e = ledger_.energy_report();
  m.cellular_tx_count = e.kind_count(sim::LinkKind::Cellular);
  m.short_range_tx_count = e.kind_count(sim::LinkKind::ShortRange);
  m.cellular_utilization = static_cast<double>(m.cellular_tx_count) /
                           static_cast<double>(m.members * m.source_packets);
  m.decoded_pairs = static_cast<std::size_t>(std::count_if(
      decoders_.begin(), decoders_.end(), [](const rlnc::Decoder& d) { return d.decodable(); }));
  m.decoding_ratio = static_cast<double>(m.decoded_pairs) / static_cast<double>(decoders_.size());
  m.total_energy = e.total;
  m.completion_time = time_;
  m.cooperative_slots = cooperative_slots_;
  m.budget_exhausted = exhausted_;
  return m;
}

SessionMetrics run_session(const CooperativeCloud& cloud, const SessionConfig& config,
                           sim::RandomStream& coding, sim::RandomStream& channel) {
  Session s(cloud, config, coding, channel);
  s.run();
  return s.metrics();
}

SessionMetrics baseline_unicast_session(const CooperativeCloud& cloud, const SessionConfig& config,
                                        sim::RandomStream& channel) {
  config.validate();
  if (cloud.size() == 0) throw std::invalid_argument("baseline_unicast_session: empty cloud");
  for (const sim::Endpoint& m : cloud.members()) {
    if (distance(m.position, config.source.position) > config.cellular.range) {
      throw std::runtime_error("baseline_unicast_session: node " + std::to_string(m.id) +
                               " is outside cellular range");
    }
  }
  sim::EnergyLedger ledger(false);
  double time = 0.0;
  for (const auto& gen : config.content) {
    for (std::size_t k = 0; k < gen.size(); ++k) {
      for (const sim::Endpoint& m : cloud.members()) {
        for (;;) {
          const sim::TransmitResult r =
              sim::transmit(config.cellular, config.source, std::span(&m, 1), channel, ledger, time, "unicast");
          time += 1.0 / config.cellular.rate;
          if (r.delivered(0)) break;
        }
      }
    }
  }
  SessionMetrics out;
  out.members = cloud.size();
  out.generations = config.content.size();
  out.source_packets = config.source_packet_count();
  const sim::EnergyReport& e = ledger.energy_report();
  out.cellular_tx_count = e.kind_count(sim::LinkKind::Cellular);
  out.cellular_utilization = static_cast<double>(out.cellular_tx_count) /
                             static_cast<double>(out.members * out.source_packets);
  out.decoded_pairs = out.members * out.generations;
  out.decoding_ratio = 1.0;
  out.total_energy = e.total;
  out.completion_time = time;
  return out;
}

}  // namespace mscsim::ncc
