#include "mscsim/net/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mscsim::net {

std::string_view to_string(NodeKind k) noexcept {
  return k == NodeKind::BaseStation ? "base_station" : "ue";
}

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::Mch: return "mch";
    case Role::Member: return "member";
    case Role::Idle: return "idle";
    case Role::Gateway: return "gateway";
  }
  return "unknown";
}

std::string_view to_string(ReselectionTrigger t) noexcept {
  switch (t) {
    case ReselectionTrigger::BatteryBelowThreshold: return "battery_below_threshold";
    case ReselectionTrigger::NewCapableNodeInRange: return "new_capable_node_in_range";
    case ReselectionTrigger::QosRequest: return "qos_request";
    case ReselectionTrigger::HeadLeftCoverage: return "head_left_coverage";
  }
  return "unknown";
}

double PathLoss::loss_db(double d) const noexcept {
  return pl0_db + 10.0 * exponent * std::log10(std::max(d, d0) / d0);
}

void ElectionPolicy::validate() const {
  if (battery_weight < 0 || link_weight < 0 || degree_weight < 0) {
    throw std::invalid_argument("ElectionPolicy: weights must be nonnegative");
  }
  if (std::abs(battery_weight + link_weight + degree_weight - 1.0) > 1e-9) {
    throw std::invalid_argument("ElectionPolicy: weights must sum to 1");
  }
  if (hysteresis < 0) throw std::invalid_argument("ElectionPolicy: hysteresis must be >= 0");
  if (battery_threshold < 0 || battery_threshold > 1) {
    throw std::invalid_argument("ElectionPolicy: battery_threshold must be in [0, 1]");
  }
}

bool MobileSmallCell::contains(NodeId id) const noexcept {
  return std::binary_search(members.begin(), members.end(), id);
}

double election_score(const Node& candidate, std::span<const Node> pool,
                      const ElectionPolicy& policy, double radius) {
  double quality_sum = 0.0;
  std::size_t heard = 0;
  std::size_t degree = 0;
  std::size_t others = 0;
  for (const Node& n : pool) {
    if (n.id == candidate.id) continue;
    ++others;
    const double d = distance(candidate.position, n.position);
    if (d <= 2.0 * radius) {
      quality_sum += 1.0 - d / (2.0 * radius);
      ++heard;
    }
    if (d <= radius) ++degree;
  }
  const double link = heard ? quality_sum / static_cast<double>(heard) : 0.0;
  const double deg = others ? static_cast<double>(degree) / static_cast<double>(others) : 0.0;
  return policy.battery_weight * std::clamp(candidate.battery, 0.0, 1.0) +
         policy.link_weight * link + policy.degree_weight * deg;
}

namespace {

struct Scored {
  const Node* node;
  double score;
};

// argmax with lowest-id tie-break
const Scored* best_of(const std::vector<Scored>& scored) {
  const Scored* best = nullptr;
  for (const Scored& s : scored) {
    if (!best || s.score > best->score || (s.score == best->score && s.node->id < best->node->id)) {
      best = &s;
    }
  }
  return best;
}

std::vector<NodeId> gather(std::span<const Node* const> pool, const Node& head, double radius) {
  std::vector<NodeId> out;
  for (const Node* n : pool) {
    if (n->id == head.id || distance(n->position, head.position) <= radius) out.push_back(n->id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const Node* find(std::span<const Node> pool, NodeId id) {
  auto it = std::find_if(pool.begin(), pool.end(), [id](const Node& n) { return n.id == id; });
  return it == pool.end() ? nullptr : &*it;
}

bool eligible(const Node& n, const ElectionPolicy& policy) {
  return n.kind == NodeKind::UE && n.active && n.battery >= policy.battery_threshold;
}

}  // namespace

MobileSmallCell form_msc(std::uint32_t msc_id, std::span<const Node> candidates,
                         const ElectionPolicy& policy, double radius) {
  policy.validate();
  if (candidates.empty()) throw std::invalid_argument("form_msc: empty candidate set");
  if (!(radius > 0)) throw std::invalid_argument("form_msc: radius must be > 0");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (distance(candidates[i].position, candidates[j].position) > 2.0 * radius + 1e-9) {
        throw std::invalid_argument("form_msc: candidates are not mutually within 2*radius");
      }
    }
  }
  std::vector<Scored> scored;
  for (const Node& n : candidates) scored.push_back({&n, election_score(n, candidates, policy, radius)});
  const Node& head = *best_of(scored)->node;

  std::vector<const Node*> pool;
  for (const Node& n : candidates) pool.push_back(&n);
  MobileSmallCell msc;
  msc.id = msc_id;
  msc.head = head.id;
  msc.members = gather(pool, head, radius);
  msc.radius = radius;
  return msc;
}

MobileSmallCell reselect_mch(const MobileSmallCell& msc, std::span<const Node> pool,
                             ReselectionTrigger trigger, const ElectionPolicy& policy) {
  policy.validate();
  MobileSmallCell out = msc;
  out.head.reset();
  out.members.clear();
  out.gateway.reset();
  if (msc.dissolved()) return out;

  const Node* incumbent = find(pool, *msc.head);
  const bool head_gone = incumbent == nullptr || trigger == ReselectionTrigger::HeadLeftCoverage;

  std::vector<Node> candidates;
  for (const Node& n : pool) {
    if (n.kind != NodeKind::UE) continue;
    if (head_gone) {
      if (msc.contains(n.id) && (!incumbent || n.id != incumbent->id)) candidates.push_back(n);
    } else if (distance(n.position, incumbent->position) <= msc.radius) {
      candidates.push_back(n);
    }
  }

  std::vector<Scored> scored;
  for (const Node& n : candidates) {
    if (eligible(n, policy)) scored.push_back({&n, election_score(n, candidates, policy, msc.radius)});
  }
  const Scored* best = best_of(scored);
  if (!best) return out;

  const Node* head = best->node;
  if (!head_gone && head->id != incumbent->id) {
    auto inc = std::find_if(scored.begin(), scored.end(),
                            [&](const Scored& s) { return s.node->id == incumbent->id; });
    // hysteresis: an eligible incumbent is displaced only by a clear margin
    if (inc != scored.end() && best->score <= inc->score + policy.hysteresis) head = inc->node;
  }

  std::vector<const Node*> ptrs;
  for (const Node& n : candidates) {
    if (n.active) ptrs.push_back(&n);
  }
  std::vector<NodeId> members = gather(ptrs, *head, msc.radius);
  if (members.size() < 2) return out;

  out.head = head->id;
  out.members = std::move(members);
  out.gateway = msc.gateway;
  return out;
}

std::optional<ReselectionTrigger> detect_trigger(const MobileSmallCell& msc,
                                                 std::span<const Node> pool,
                                                 const ElectionPolicy& policy) {
  if (msc.dissolved()) return std::nullopt;
  const Node* head = find(pool, *msc.head);
  if (!head || !head->active) return ReselectionTrigger::HeadLeftCoverage;
  if (head->battery < policy.battery_threshold) return ReselectionTrigger::BatteryBelowThreshold;

  std::size_t others = 0;
  std::size_t away = 0;
  for (NodeId id : msc.members) {
    if (id == head->id) continue;
    const Node* m = find(pool, id);
    ++others;
    if (!m || distance(m->position, head->position) > msc.radius) ++away;
  }
  if (others > 0 && 2 * away > others) return ReselectionTrigger::HeadLeftCoverage;

  for (const Node& n : pool) {
    if (!msc.contains(n.id) && eligible(n, policy) &&
        distance(n.position, head->position) <= msc.radius) {
      return ReselectionTrigger::NewCapableNodeInRange;
    }
  }
  return std::nullopt;
}

MobileSmallCell associate_gateway(MobileSmallCell msc, Vec2 head_position,
                                  std::span<const BaseStation> stations, const PathLoss& pathloss) {
  if (stations.empty()) throw std::invalid_argument("associate_gateway: no base stations");
  const BaseStation* best = nullptr;
  double best_dbm = 0.0;
  for (const BaseStation& bs : stations) {
    const double rx = pathloss.received_dbm(bs.tx_power_dbm, distance(head_position, bs.position));
    if (!best || rx > best_dbm || (rx == best_dbm && bs.id < best->id)) {
      best = &bs;
      best_dbm = rx;
    }
  }
  msc.gateway = best->id;
  msc.gateway_rx_dbm = best_dbm;
  return msc;
}

}  // namespace mscsim::net
