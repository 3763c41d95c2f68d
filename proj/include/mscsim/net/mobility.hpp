#pragma once

#include <span>

#include "mscsim/net/topology.hpp"
#include "mscsim/sim/random.hpp"

namespace mscsim::net {

struct Arena {
  double width = 1000.0;
  double height = 1000.0;
  friend bool operator==(const Arena&, const Arena&) = default;
};

struct MobilityParams {
  Arena arena;
  double speed_min = 1.0;
  double speed_max = 10.0;
};

Vec2 uniform_point(const Arena& arena, sim::RandomStream& rng);

/// Random-waypoint step. Each UE walks toward its waypoint at its leg speed;
/// on arrival it draws a fresh waypoint uniformly in the arena and a fresh
/// speed in [speed_min, speed_max], and spends the rest of dt on the new leg.
/// Base stations never move. Throws std::invalid_argument unless dt > 0.
void step_mobility(std::span<Node> nodes, double dt, const MobilityParams& params,
                   sim::RandomStream& rng);

}  // namespace mscsim::net
