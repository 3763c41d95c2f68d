#include "mscsim/scenario/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mscsim::scenario {
namespace {

using Json = nlohmann::ordered_json;

Json base_record(const Scenario& s, const RunResult& r, std::string_view type) {
  Json j;
  j["schema"] = kRecordSchema;
  j["type"] = type;
  j["run_id"] = r.run_id;
  j["scenario_hash"] = r.scenario_hash;
  j["seed"] = s.seed.seed;
  Json cfg = Json::object();
  for (const auto& [k, v] : config_echo(s)) cfg[k] = v;
  j["config"] = std::move(cfg);
  return j;
}

Json optional_id(const std::optional<NodeId>& id) {
  return id ? Json(*id) : Json(nullptr);
}

Json metrics_json(const ncc::SessionMetrics& m) {
  Json j;
  j["members"] = m.members;
  j["generations"] = m.generations;
  j["source_packets"] = m.source_packets;
  j["cellular_tx_count"] = m.cellular_tx_count;
  j["short_range_tx_count"] = m.short_range_tx_count;
  j["cellular_utilization"] = m.cellular_utilization;
  j["decoding_ratio"] = m.decoding_ratio;
  j["decoded_pairs"] = m.decoded_pairs;
  j["total_energy"] = m.total_energy;
  j["completion_time"] = m.completion_time;
  j["cooperative_slots"] = m.cooperative_slots;
  j["budget_exhausted"] = m.budget_exhausted;
  return j;
}

Json slot_json(const ncc::SlotRecord& r) {
  Json j;
  j["slot"] = r.slot;
  j["phase"] = ncc::to_string(r.phase);
  j["sender"] = r.sender;
  j["generation"] = r.generation ? Json(*r.generation) : Json(nullptr);
  j["receivers"] = r.receivers;
  j["delivered"] = r.delivered;
  j["innovative"] = r.innovative;
  j["skipped"] = r.skipped;
  return j;
}

Json handover_json(const handover::HandoverEvent& e) {
  Json j;
  j["entity"] = e.entity;
  j["serving"] = e.serving;
  j["target"] = optional_id(e.target);
  j["executed"] = e.executed();
  j["ue_tx"] = e.ue_tx_messages;
  j["ue_rx"] = e.ue_rx_messages;
  j["network"] = e.network_messages;
  j["time"] = e.time;
  return j;
}

Json handover_aggregate_json(const HandoverAggregate& h) {
  Json j;
  j["epochs"] = h.epochs;
  j["events"] = h.events;
  j["executed"] = h.executed;
  j["radio_link_failures"] = h.radio_link_failures;
  j["decision_mismatches"] = h.decision_mismatches;
  j["ulrs_ue_tx"] = h.ulrs_ue_tx;
  j["ulrs_ue_rx"] = h.ulrs_ue_rx;
  j["ulrs_network"] = h.ulrs_network;
  j["baseline_ue_tx"] = h.baseline_ue_tx;
  j["baseline_ue_rx"] = h.baseline_ue_rx;
  j["baseline_network"] = h.baseline_network;
  j["ulrs_ue_tx_executed"] = h.ulrs_ue_tx_executed;
  j["baseline_ue_tx_executed"] = h.baseline_ue_tx_executed;
  j["ulrs_energy"] = h.ulrs_energy;
  j["baseline_energy"] = h.baseline_energy;
  const double events = h.events ? static_cast<double>(h.events) : 1.0;
  j["ulrs_mean_energy"] = h.ulrs_energy / events;
  j["baseline_mean_energy"] = h.baseline_energy / events;
  return j;
}

Json km_aggregate_json(const KmAggregate& k) {
  Json j;
  j["enabled"] = k.enabled;
  j["requests"] = k.requests;
  j["served"] = k.served;
  j["unavailable"] = k.unavailable;
  j["certificates"] = k.certificates;
  j["certificates_verified"] = k.certificates_verified;
  j["certificate_sends"] = k.certificate_sends;
  j["joins"] = k.joins;
  j["join_failures"] = k.join_failures;
  j["channels_attempted"] = k.channels_attempted;
  j["channels_established"] = k.channels_established;
  j["shareholders"] = k.shareholders;
  j["messages"] = k.messages;
  j["violations"] = k.violations;
  j["fairness_max_over_mean"] = k.fairness_max_over_mean;
  j["never_served"] = k.never_served;
  return j;
}

Json summary_json(const RunSummary& s) {
  Json j;
  j["sessions_run"] = s.sessions_run;
  j["sessions_skipped"] = s.sessions_skipped;
  j["cellular_tx"] = s.cellular_tx;
  j["short_range_tx"] = s.short_range_tx;
  j["unicast_equivalent"] = s.unicast_equivalent;
  j["decoded_pairs"] = s.decoded_pairs;
  j["total_pairs"] = s.total_pairs;
  j["decoding_ratio"] = s.decoding_ratio;
  j["cellular_utilization"] = s.cellular_utilization;
  j["total_energy"] = s.total_energy;
  j["budget_exhausted"] = s.budget_exhausted;
  j["reselections"] = s.reselections;
  j["events"] = s.events;
  j["trace_digest"] = s.trace_digest;
  j["handover"] = handover_aggregate_json(s.handover);
  j["km"] = km_aggregate_json(s.km);
  return j;
}

}  // namespace

std::vector<std::string> render_run(const Scenario& s, const RunResult& r) {
  std::vector<std::string> out;
  auto emit = [&](Json j) { out.push_back(j.dump()); };

  Json header = base_record(s, r, "header");
  header["preset"] = s.preset;
  emit(std::move(header));

  Json topo = base_record(s, r, "topology");
  Json nodes = Json::array();
  for (const auto& bs : r.topology.stations) {
    nodes.push_back({{"id", bs.id}, {"kind", "bs"}, {"x", bs.position.x}, {"y", bs.position.y}, {"active", true}});
  }
  for (const auto& n : r.topology.ues) {
    nodes.push_back({{"id", n.id},
                     {"kind", "ue"},
                     {"x", n.position.x},
                     {"y", n.position.y},
                     {"battery", n.battery},
                     {"role", net::to_string(n.role)},
                     {"active", n.active}});
  }
  topo["nodes"] = std::move(nodes);
  if (r.topology.msc && !r.topology.msc->dissolved()) {
    topo["msc"] = {{"head", *r.topology.msc->head},
                   {"members", r.topology.msc->members},
                   {"gateway", optional_id(r.topology.msc->gateway)}};
  } else {
    topo["msc"] = nullptr;
  }
  emit(std::move(topo));

  if (r.summary.km.enabled) {
    Json k = base_record(s, r, "km");
    k["aggregate"] = km_aggregate_json(r.summary.km);
    Json tr = Json::array();
    for (const auto& e : r.km_transcript) {
      tr.push_back({{"request", e.request}, {"requester", e.requester}, {"participants", e.participants},
                    {"outcome", e.outcome}});
    }
    k["transcript"] = std::move(tr);
    emit(std::move(k));
  }

  for (const auto& sess : r.sessions) {
    Json j = base_record(s, r, "session");
    j["index"] = sess.index;
    j["start_time"] = sess.start_time;
    j["skipped"] = sess.skipped;
    if (sess.skipped) {
      j["skip_reason"] = sess.skip_reason;
    } else {
      j["head"] = optional_id(sess.head);
      j["gateway"] = optional_id(sess.gateway);
      j["metrics"] = metrics_json(sess.metrics);
    }
    if (s.slot_log) {
      Json slots = Json::array();
      for (const auto& slot : sess.slots) slots.push_back(slot_json(slot));
      j["slots"] = std::move(slots);
    }
    emit(std::move(j));
  }

  for (const auto& rs : r.reselections) {
    Json j = base_record(s, r, "reselection");
    j["time"] = rs.time;
    j["trigger"] = net::to_string(rs.trigger);
    j["old_head"] = optional_id(rs.old_head);
    j["new_head"] = optional_id(rs.new_head);
    emit(std::move(j));
  }

  for (const auto& h : r.handovers) {
    Json j = base_record(s, r, "handover");
    j["ulrs"] = handover_json(h.ulrs);
    j["baseline"] = handover_json(h.baseline);
    emit(std::move(j));
  }

  if (!r.ok) {
    Json e = base_record(s, r, "error");
    e["message"] = r.error;
    emit(std::move(e));
  }

  Json sum = base_record(s, r, "summary");
  sum["ok"] = r.ok;
  sum["summary"] = summary_json(r.summary);
  emit(std::move(sum));
  return out;
}

std::string summary_table(const RunResult& r) {
  const RunSummary& s = r.summary;
  std::ostringstream o;
  o << "run " << r.run_id << (r.ok ? "" : "  FAILED: " + r.error) << "\n";
  o << "  sessions            " << s.sessions_run << " run, " << s.sessions_skipped << " skipped\n";
  if (s.sessions_run) {
    o << "  decoding ratio      " << s.decoding_ratio << " (" << s.decoded_pairs << "/" << s.total_pairs << ")\n";
    o << "  cellular util.      " << s.cellular_utilization << " (" << s.cellular_tx << "/" << s.unicast_equivalent
      << ")\n";
    o << "  short-range tx      " << s.short_range_tx << "\n";
    o << "  total energy        " << s.total_energy << "\n";
  }
  if (s.handover.events) {
    o << "  handover events     " << s.handover.events << ", executed " << s.handover.executed << ", RLF "
      << s.handover.radio_link_failures << "\n";
    o << "  UE tx ul-rs/base    " << s.handover.ulrs_ue_tx << " / " << s.handover.baseline_ue_tx << "\n";
  }
  if (s.km.enabled) {
    o << "  km served           " << s.km.served << "/" << s.km.requests << ", joins " << s.km.joins
      << ", shareholders " << s.km.shareholders << ", channels " << s.km.channels_established << "/"
      << s.km.channels_attempted << "\n";
  }
  o << "  events              " << s.events << " (trace " << s.trace_digest << ")\n";
  return o.str();
}

void write_lines_atomic(const std::filesystem::path& path, std::span<const std::string> lines) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    for (const auto& l : lines) f << l << '\n';
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path output_dir() {
  if (const char* dir = std::getenv("MSC_SIM_OUT_DIR"); dir && *dir) return dir;
  return ".";
}

}  // namespace mscsim::scenario
