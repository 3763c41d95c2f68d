#include "mscsim/scenario/runner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "mscsim/km/certificate.hpp"
#include "mscsim/km/channel.hpp"
#include "mscsim/net/mobility.hpp"
#include "mscsim/sim/event_queue.hpp"

namespace mscsim::scenario {
namespace {

std::string ue_name(NodeId id) { return "ue-" + std::to_string(id); }

class Run {
 public:
  Run(const Scenario& sc, RunResult& out)
      : sc_{sc},
        out_{out},
        mobility_{sc.seed.stream(sim::Subsystem::Mobility)},
        channel_{sc.seed.stream(sim::Subsystem::Channel)},
        coding_{sc.seed.stream(sim::Subsystem::Coding)},
        crypto_{sc.seed.stream(sim::Subsystem::Crypto)},
        queue_{true} {}

  void execute() {
    queue_.schedule(0.0, [this] { setup_topology(); }, "topology");
    if (sc_.km_enabled) queue_.schedule(0.0, [this] { km_bootstrap(); }, "km-bootstrap");
    for (std::size_t i = 0; i < sc_.sessions; ++i) {
      const double t = static_cast<double>(i) * sc_.session_interval;
      queue_.schedule(t, [this, i, t] { run_session(i, t); }, "session-" + std::to_string(i));
    }
    for (std::size_t k = 1; k <= sc_.ho_epochs; ++k) {
      const double t = static_cast<double>(k) * sc_.ho_dt;
      queue_.schedule(t, [this, t] { epoch(t); }, "epoch-" + std::to_string(k));
    }
    queue_.run_until(std::numeric_limits<double>::max());
    finish();
  }

  void finish() {
    RunSummary& s = out_.summary;
    s.events = queue_.trace().size();
    km::ByteWriter w;
    for (const auto& rec : queue_.trace()) w.u64(std::bit_cast<std::uint64_t>(rec.time)).u64(rec.sequence).str(rec.label);
    s.trace_digest = km::to_hex(w.digest()).substr(0, 16);
    s.decoding_ratio = s.total_pairs ? static_cast<double>(s.decoded_pairs) / static_cast<double>(s.total_pairs) : 0.0;
    s.cellular_utilization =
        s.unicast_equivalent ? static_cast<double>(s.cellular_tx) / static_cast<double>(s.unicast_equivalent) : 0.0;
    s.reselections = out_.reselections.size();
    out_.topology.stations = stations_;
    out_.topology.ues = ues_;
    out_.topology.msc = msc_;
  }

 private:
  net::Node* ue(NodeId id) {
    auto it = std::find_if(ues_.begin(), ues_.end(), [id](const net::Node& n) { return n.id == id; });
    return it == ues_.end() ? nullptr : &*it;
  }

  const net::BaseStation& station(NodeId id) const {
    return stations_.at(id);  // base stations take ids 0..B-1
  }

  std::optional<NodeId> strongest(Vec2 where, double t) const {
    const auto snap = handover::measure(where, stations_, sc_.pathloss, sc_.ho, t);
    const handover::MeasurementReport* best = nullptr;
    for (const auto& r : snap) {
      if (!best || r.rx_dbm > best->rx_dbm || (r.rx_dbm == best->rx_dbm && r.bs < best->bs)) best = &r;
    }
    if (!best) return std::nullopt;
    return best->bs;
  }

  void setup_topology() {
    const std::size_t b = sc_.base_stations;
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(b))));
    const std::size_t rows = (b + cols - 1) / cols;
    for (std::size_t k = 0; k < b; ++k) {
      const double x = (static_cast<double>(k % cols) + 0.5) * sc_.arena.width / static_cast<double>(cols);
      const double y = (static_cast<double>(k / cols) + 0.5) * sc_.arena.height / static_cast<double>(rows);
      stations_.push_back({static_cast<NodeId>(k), {x, y}});
    }

    if (sc_.mobility == MobilityModel::Group) {
      group_ref_.position = net::uniform_point(sc_.arena, mobility_);
      // Offsets inside a disc of radius/2 keep every pair within one radius.
      const double r = sc_.msc_radius / 2.0;
      for (std::size_t i = 0; i < sc_.ues; ++i) {
        Vec2 off;
        do {
          off = {mobility_.uniform(-r, r), mobility_.uniform(-r, r)};
        } while (off.norm() > r);
        offsets_.push_back(off);
      }
    }
    for (std::size_t i = 0; i < sc_.ues; ++i) {
      net::Node n;
      n.id = static_cast<NodeId>(b + i);
      n.kind = net::NodeKind::UE;
      n.battery = sc_.battery_initial;
      n.position = sc_.mobility == MobilityModel::Group ? group_ref_.position + offsets_[i]
                                                         : net::uniform_point(sc_.arena, mobility_);
      ues_.push_back(n);
    }

    if (sc_.sessions > 0) {
      msc_ = net::form_msc(0, ues_, sc_.election, sc_.msc_radius);
      msc_ = net::associate_gateway(*msc_, ue(*msc_->head)->position, stations_, sc_.pathloss);
      cell_serving_ = *msc_->gateway;
      assign_roles();
    }
    for (const auto& n : ues_) {
      const auto s = strongest(n.position, 0.0);
      ue_serving_[n.id] = s.value_or(0);
    }
    out_.topology.stations = stations_;
    out_.topology.ues = ues_;
    out_.topology.msc = msc_;
  }

  void assign_roles() {
    for (auto& n : ues_) n.role = net::Role::Idle;
    if (!msc_ || msc_->dissolved()) return;
    for (NodeId id : msc_->members) {
      if (net::Node* n = ue(id)) n->role = id == *msc_->head ? net::Role::Mch : net::Role::Member;
    }
  }

  km::GroupParams group_params() const {
    if (sc_.km_group == "builtin") return km::GroupParams::builtin();
    if (sc_.km_group == "toy") return km::GroupParams::toy();
    return km::load_group_params(sc_.km_group);
  }

  void km_bootstrap() {
    KmAggregate& agg = out_.summary.km;
    agg.enabled = true;
    const km::GroupParams params = group_params();
    km::DistributedAuthority authority(params, sc_.km, km::setup(sc_.km, params, crypto_));

    std::vector<const net::Node*> holders, requesters;
    for (std::size_t i = 0; i < ues_.size(); ++i) {
      if (i < sc_.km.n) holders.push_back(&ues_[i]);
      else if (i < sc_.km.n + sc_.km_requesters) requesters.push_back(&ues_[i]);
    }
    std::map<km::ShareIndex, const net::Node*> owner_node;
    for (std::size_t i = 0; i < holders.size(); ++i) {
      const auto idx = static_cast<km::ShareIndex>(i + 1);
      authority.set_owner(idx, ue_name(holders[i]->id));
      owner_node[idx] = holders[i];
    }

    const std::int64_t now = 0;
    const km::Warrant warrant{now, now + sc_.km_warrant_lifetime, "certify"};
    std::vector<km::NodeIdentity> identities;
    for (const net::Node* req : requesters) {
      const std::string name = ue_name(req->id);
      std::vector<km::ShareIndex> reachable;
      for (const auto& [idx, node] : owner_node) {
        if (distance(node->position, req->position) <= sc_.km_service_range) reachable.push_back(idx);
      }
      ++agg.requests;
      km::CredentialGrant grant;
      try {
        grant = authority.request_credential(name, reachable, warrant, crypto_);
      } catch (const km::ServiceUnavailable&) {
        ++agg.unavailable;
        continue;
      }
      ++agg.served;

      const km::KeyPair subject_keys = km::KeyPair::generate(params, crypto_);
      const std::uint64_t before = authority.tap().sends();
      km::Certificate cert = km::self_generate_certificate(params, name, grant.credential, grant.proxy_keys,
                                                           subject_keys.public_key, {now, warrant.not_after}, now,
                                                           crypto_);
      agg.certificate_sends += authority.tap().sends() - before;
      ++agg.certificates;
      if (km::verify_certificate(params, cert, authority.master_public(), now) == km::Verdict::Accept) {
        ++agg.certificates_verified;
      }
      identities.push_back({name, std::move(cert), subject_keys});

      if (sc_.km_join) {
        try {
          const km::ShareIndex idx =
              authority.join(name, grant.credential, reachable, now, crypto_, sc_.km_authorized);
          owner_node[idx] = req;
          ++agg.joins;
        } catch (const std::exception&) {
          ++agg.join_failures;
        }
      }
    }

    for (std::size_t i = 0; i + 1 < identities.size(); ++i) {
      ++agg.channels_attempted;
      const km::ChannelOutcome c = km::establish_secure_channel(params, identities[i], identities[i + 1],
                                                                authority.master_public(), now, crypto_);
      authority.tap().record(2);
      if (c.established && c.initiator_key == c.responder_key) ++agg.channels_established;
    }

    const std::vector<km::ShareIndex> roster = authority.roster();
    const auto log = authority.service_log();
    const km::FairnessReport fair = km::fairness_audit(log, roster);
    agg.shareholders = roster.size();
    agg.messages = authority.tap().sends();
    agg.fairness_max_over_mean = fair.max_over_mean;
    agg.never_served = fair.never_served.size();
    for (km::ShareIndex x : roster) agg.violations += authority.shareholder(x).violations();
    out_.km_transcript = authority.transcript();
  }

  void run_session(std::size_t index, double t) {
    SessionRecord rec;
    rec.index = index;
    rec.start_time = t;
    RunSummary& s = out_.summary;
    if (!msc_ || msc_->dissolved()) {
      rec.skipped = true;
      rec.skip_reason = "no active cell";
      ++s.sessions_skipped;
      out_.sessions.push_back(std::move(rec));
      return;
    }
    rec.head = msc_->head;
    rec.gateway = msc_->gateway;

    std::vector<sim::Endpoint> members;
    for (NodeId id : msc_->members) members.push_back({id, ue(id)->position});
    const ncc::CooperativeCloud cloud = ncc::assign_indices(members, *msc_->head);

    ncc::SessionConfig cfg;
    for (std::size_t g = 0; g < sc_.generations; ++g) {
      cfg.content.push_back(rlnc::Generation::random(static_cast<rlnc::GenerationId>(index * sc_.generations + g),
                                                     sc_.generation_size, sc_.payload_length, coding_));
    }
    cfg.redundancy = sc_.redundancy;
    cfg.mode = sc_.phase_mode;
    cfg.slot_budget = sc_.slot_budget;
    cfg.cellular = sc_.cellular;
    cfg.short_range = sc_.short_range;
    const net::BaseStation& bs = station(*msc_->gateway);
    cfg.source = {bs.id, bs.position};

    if (sc_.protocol == Protocol::Ncc) {
      ncc::Session session(cloud, std::move(cfg), coding_, channel_);
      session.run();
      rec.metrics = session.metrics();
      if (sc_.slot_log) rec.slots = session.log();
    } else {
      rec.metrics = ncc::baseline_unicast_session(cloud, cfg, channel_);
    }

    const ncc::SessionMetrics& m = rec.metrics;
    ++s.sessions_run;
    s.cellular_tx += m.cellular_tx_count;
    s.short_range_tx += m.short_range_tx_count;
    s.unicast_equivalent += m.members * m.source_packets;
    s.decoded_pairs += m.decoded_pairs;
    s.total_pairs += m.members * m.generations;
    s.total_energy += m.total_energy;
    s.budget_exhausted += m.budget_exhausted ? 1 : 0;

    const double drain = sc_.battery_energy_drain * m.total_energy / static_cast<double>(m.members);
    for (NodeId id : msc_->members) {
      net::Node* n = ue(id);
      n->battery = std::max(0.0, n->battery - drain);
    }
    out_.sessions.push_back(std::move(rec));
  }

  void move_nodes() {
    net::MobilityParams mp{sc_.arena, sc_.speed_min, sc_.speed_max};
    switch (sc_.mobility) {
      case MobilityModel::Static:
        break;
      case MobilityModel::RandomWaypoint:
        net::step_mobility(ues_, sc_.ho_dt, mp, mobility_);
        break;
      case MobilityModel::Group:
        net::step_mobility(std::span(&group_ref_, 1), sc_.ho_dt, mp, mobility_);
        for (std::size_t i = 0; i < ues_.size(); ++i) {
          ues_[i].position = group_ref_.position + offsets_[i];
          ues_[i].velocity = group_ref_.velocity;
        }
        break;
    }
  }

  void drain_batteries() {
    if (!msc_ || msc_->dissolved()) return;
    for (NodeId id : msc_->members) {
      net::Node* n = ue(id);
      const double rate = id == *msc_->head ? sc_.battery_mch_drain : sc_.battery_member_drain;
      n->battery = std::max(0.0, n->battery - rate * sc_.ho_dt);
    }
  }

  void maintain_cell(double t) {
    if (!msc_ || msc_->dissolved()) return;
    const auto trigger = net::detect_trigger(*msc_, ues_, sc_.election);
    if (!trigger) return;
    const std::optional<NodeId> old_head = msc_->head;
    net::MobileSmallCell next = net::reselect_mch(*msc_, ues_, *trigger, sc_.election);
    if (!next.dissolved()) next.gateway = cell_serving_;
    out_.reselections.push_back({t, *trigger, old_head, next.head});
    if (next.dissolved()) {
      // Members fall back to handing over on their own from the cell's BS.
      for (NodeId id : msc_->members) ue_serving_[id] = cell_serving_;
    }
    msc_ = std::move(next);
    assign_roles();
  }

  void handover_step(NodeId entity, Vec2 where, NodeId& serving, double t) {
    const handover::RadioSnapshot snap = handover::measure(where, stations_, sc_.pathloss, sc_.ho, t);
    const handover::HandoverEvent ul = handover::ul_rs_handover(entity, serving, snap, sc_.ho, t);
    const handover::HandoverEvent bl = handover::baseline_handover(entity, serving, snap, sc_.ho, t);
    HandoverAggregate& h = out_.summary.handover;
    ++h.events;
    if (ul.target != bl.target) ++h.decision_mismatches;
    if (ul.radio_link_failure()) ++h.radio_link_failures;
    h.ulrs_ue_tx += ul.ue_tx_messages;
    h.ulrs_ue_rx += ul.ue_rx_messages;
    h.ulrs_network += ul.network_messages;
    h.baseline_ue_tx += bl.ue_tx_messages;
    h.baseline_ue_rx += bl.ue_rx_messages;
    h.baseline_network += bl.network_messages;
    h.ulrs_energy += handover::ho_energy(ul, sc_.ho_energy);
    h.baseline_energy += handover::ho_energy(bl, sc_.ho_energy);
    if (ul.executed()) {
      ++h.executed;
      h.ulrs_ue_tx_executed += ul.ue_tx_messages;
      h.baseline_ue_tx_executed += bl.ue_tx_messages;
      serving = *ul.target;
    }
    if (sc_.handover_log) out_.handovers.push_back({ul, bl});
  }

  void epoch(double t) {
    move_nodes();
    drain_batteries();
    maintain_cell(t);
    ++out_.summary.handover.epochs;
    if (msc_ && !msc_->dissolved()) {
      handover_step(*msc_->head, ue(*msc_->head)->position, cell_serving_, t);
      msc_->gateway = cell_serving_;
      return;
    }
    for (const auto& n : ues_) handover_step(n.id, n.position, ue_serving_[n.id], t);
  }

  const Scenario& sc_;
  RunResult& out_;
  sim::RandomStream mobility_;
  sim::RandomStream channel_;
  sim::RandomStream coding_;
  sim::RandomStream crypto_;
  sim::EventQueue queue_;

  std::vector<net::BaseStation> stations_;
  std::vector<net::Node> ues_;
  net::Node group_ref_;
  std::vector<Vec2> offsets_;
  std::optional<net::MobileSmallCell> msc_;
  NodeId cell_serving_ = 0;
  std::map<NodeId, NodeId> ue_serving_;
};

}  // namespace

std::string make_run_id(const Scenario& s) {
  return (s.preset.empty() ? std::string("custom") : s.preset) + "-" + scenario_hash(s).substr(0, 8) + "-" +
         std::to_string(s.seed.seed);
}

RunResult run_scenario(const Scenario& s) {
  RunResult out;
  out.run_id = make_run_id(s);
  out.scenario_hash = scenario_hash(s);
  Run run(s, out);
  try {
    validate_scenario(s);
    run.execute();
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    run.finish();
  }
  return out;
}

}  // namespace mscsim::scenario
