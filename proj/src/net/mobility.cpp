#include "mscsim/net/mobility.hpp"

#include <stdexcept>

namespace mscsim::net {

Vec2 uniform_point(const Arena& arena, sim::RandomStream& rng) {
  const double x = rng.uniform(0.0, arena.width);
  const double y = rng.uniform(0.0, arena.height);
  return {x, y};
}

namespace {

void new_leg(Node& n, const MobilityParams& p, sim::RandomStream& rng) {
  n.waypoint = uniform_point(p.arena, rng);
  n.speed = rng.uniform(p.speed_min, p.speed_max);
  n.has_waypoint = true;
}

}  // namespace

void step_mobility(std::span<Node> nodes, double dt, const MobilityParams& params,
                   sim::RandomStream& rng) {
  if (!(dt > 0)) throw std::invalid_argument("step_mobility: dt must be > 0");
  if (params.speed_min < 0 || params.speed_max < params.speed_min) {
    throw std::invalid_argument("step_mobility: need 0 <= speed_min <= speed_max");
  }
  for (Node& n : nodes) {
    if (n.kind == NodeKind::BaseStation) {
      n.velocity = {};
      continue;
    }
    if (!n.has_waypoint) new_leg(n, params, rng);
    double remaining = dt;
    // A zero-speed leg never arrives; the bound guards degenerate arenas.
    for (int legs = 0; remaining > 0 && legs < 64; ++legs) {
      const Vec2 to_go = n.waypoint - n.position;
      const double dist = to_go.norm();
      if (n.speed <= 0.0) {
        n.velocity = {};
        break;
      }
      const double reach = n.speed * remaining;
      if (reach < dist) {
        n.velocity = to_go * (n.speed / dist);
        n.position = n.position + to_go * (reach / dist);
        break;
      }
      n.position = n.waypoint;
      remaining -= dist / n.speed;
      new_leg(n, params, rng);
    }
  }
}

}  // namespace mscsim::net
