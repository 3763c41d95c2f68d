#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mscsim/net/mobility.hpp"
#include "mscsim/net/topology.hpp"

using namespace mscsim;
using namespace mscsim::net;

namespace {

Node ue(NodeId id, double x, double y, double battery = 1.0) {
  Node n;
  n.id = id;
  n.position = {x, y};
  n.battery = battery;
  return n;
}

}  // namespace

TEST_SUITE("net") {

TEST_CASE("pathloss follows the log-distance law") {
  const PathLoss pl{40.0, 1.0, 3.5};
  CHECK(pl.loss_db(1.0) == doctest::Approx(40.0));
  CHECK(pl.loss_db(10.0) == doctest::Approx(75.0));
  CHECK(pl.loss_db(100.0) == doctest::Approx(110.0));
  CHECK(pl.loss_db(0.1) == doctest::Approx(40.0));  // clamped below d0
  CHECK(pl.received_dbm(23.0, 10.0) == doctest::Approx(-52.0));
}

TEST_CASE("election policy validation") {
  ElectionPolicy p;
  CHECK_NOTHROW(p.validate());
  p.battery_weight = 0.6;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.link_weight = -0.1;
  p.battery_weight = 0.9;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("score is the weighted sum of battery, link quality and degree") {
  ElectionPolicy p;
  const std::vector<Node> pool{ue(1, 0, 0, 0.8), ue(2, 10, 0), ue(3, 30, 0)};
  // radius 20: node 1 hears 2 (q 0.75) and 3 (q 0.25); degree 1 of 2
  const double expect = 0.5 * 0.8 + 0.3 * 0.5 + 0.2 * 0.5;
  CHECK(election_score(pool[0], pool, p, 20.0) == doctest::Approx(expect));
  for (const auto& n : pool) {
    const double s = election_score(n, pool, p, 20.0);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("formation elects the best scorer and gathers members within radius") {
  ElectionPolicy p;
  const std::vector<Node> pool{ue(4, 0, 0, 0.5), ue(2, 10, 0), ue(7, 20, 0, 0.5)};
  const auto msc = form_msc(1, pool, p, 20.0);
  REQUIRE(msc.head);
  CHECK(*msc.head == 2);
  CHECK(msc.members == std::vector<NodeId>{2, 4, 7});
  CHECK(msc.contains(7));
  CHECK_FALSE(msc.contains(3));
}

TEST_CASE("ties break toward the lowest id") {
  ElectionPolicy p;
  const std::vector<Node> pool{ue(9, 0, 0), ue(3, 10, 0)};
  CHECK(*form_msc(1, pool, p, 20.0).head == 3);
}

TEST_CASE("formation rejects empty and spread-out candidate sets") {
  ElectionPolicy p;
  CHECK_THROWS_AS(form_msc(1, std::span<const Node>{}, p, 20.0), std::invalid_argument);
  const std::vector<Node> far{ue(1, 0, 0), ue(2, 41, 0)};
  CHECK_THROWS_AS(form_msc(1, far, p, 20.0), std::invalid_argument);
}

TEST_CASE("a drained head triggers reselection and loses the role") {
  ElectionPolicy p;
  std::vector<Node> pool{ue(1, 0, 0), ue(2, 5, 0, 0.9), ue(3, 10, 0, 0.9)};
  auto msc = form_msc(1, pool, p, 20.0);
  REQUIRE(*msc.head == 1);
  CHECK_FALSE(detect_trigger(msc, pool, p).has_value());
  pool[0].battery = 0.05;
  const auto trig = detect_trigger(msc, pool, p);
  REQUIRE(trig);
  CHECK(*trig == ReselectionTrigger::BatteryBelowThreshold);
  const auto next = reselect_mch(msc, pool, *trig, p);
  REQUIRE(next.head);
  CHECK(*next.head != 1);
  CHECK(next.contains(1));  // still a member, just not the head
}

TEST_CASE("hysteresis keeps a slightly weaker incumbent") {
  ElectionPolicy p;
  std::vector<Node> pool{ue(1, 0, 0, 0.96), ue(2, 0.5, 0, 1.0), ue(3, 5, 0)};
  MobileSmallCell msc;
  msc.id = 1;
  msc.head = 1;
  msc.members = {1, 2, 3};
  msc.radius = 20;
  CHECK(*reselect_mch(msc, pool, ReselectionTrigger::QosRequest, p).head == 1);
  pool[0].battery = 0.5;
  CHECK(*reselect_mch(msc, pool, ReselectionTrigger::QosRequest, p).head != 1);
}

TEST_CASE("the cell dissolves when nobody is eligible") {
  ElectionPolicy p;
  std::vector<Node> pool{ue(1, 0, 0, 0.01), ue(2, 5, 0, 0.02)};
  MobileSmallCell msc;
  msc.head = 1;
  msc.members = {1, 2};
  msc.radius = 20;
  CHECK(reselect_mch(msc, pool, ReselectionTrigger::BatteryBelowThreshold, p).dissolved());
}

TEST_CASE("members drifting away signal head-left-coverage") {
  ElectionPolicy p;
  std::vector<Node> pool{ue(1, 0, 0), ue(2, 5, 0), ue(3, 8, 0)};
  auto msc = form_msc(1, pool, p, 20.0);
  REQUIRE(*msc.head == 2);
  pool[0].position = {100, 0};
  pool[2].position = {105, 0};
  const auto trig = detect_trigger(msc, pool, p);
  REQUIRE(trig);
  CHECK(*trig == ReselectionTrigger::HeadLeftCoverage);
  const auto next = reselect_mch(msc, pool, *trig, p);
  REQUIRE(next.head);
  CHECK(*next.head != 2);
  CHECK(next.members == std::vector<NodeId>{1, 3});
}

TEST_CASE("a capable newcomer in range is detected") {
  ElectionPolicy p;
  std::vector<Node> pool{ue(1, 0, 0), ue(2, 5, 0)};
  auto msc = form_msc(1, pool, p, 20.0);
  pool.push_back(ue(3, 3, 3));
  const auto trig = detect_trigger(msc, pool, p);
  REQUIRE(trig);
  CHECK(*trig == ReselectionTrigger::NewCapableNodeInRange);
}

TEST_CASE("gateway is the strongest base station") {
  const std::vector<BaseStation> bss{{100, {0, 0}}, {101, {500, 0}}, {102, {1000, 0}}};
  MobileSmallCell msc;
  msc.head = 1;
  const auto g = associate_gateway(msc, {600, 0}, bss, PathLoss{});
  REQUIRE(g.gateway);
  CHECK(*g.gateway == 101);
  const auto tie = associate_gateway(msc, {750, 0}, bss, PathLoss{});
  CHECK(*tie.gateway == 101);
  CHECK_THROWS_AS(associate_gateway(msc, {0, 0}, std::span<const BaseStation>{}, PathLoss{}),
                  std::invalid_argument);
}

TEST_CASE("random waypoint stays in the arena and respects speed bounds") {
  sim::RandomStream rng(11, 1);
  MobilityParams mp{{200, 100}, 2.0, 6.0};
  std::vector<Node> nodes;
  for (NodeId i = 0; i < 20; ++i) nodes.push_back(ue(i, 100, 50));
  Node bs;
  bs.id = 99;
  bs.kind = NodeKind::BaseStation;
  bs.position = {1, 1};
  nodes.push_back(bs);
  for (int step = 0; step < 500; ++step) {
    std::vector<Vec2> before;
    for (const auto& n : nodes) before.push_back(n.position);
    step_mobility(nodes, 0.5, mp, rng);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      REQUIRE(n.position.x >= 0);
      REQUIRE(n.position.x <= 200);
      REQUIRE(n.position.y >= 0);
      REQUIRE(n.position.y <= 100);
      // straight-line displacement cannot exceed the fastest leg
      REQUIRE(distance(before[i], n.position) <= 6.0 * 0.5 + 1e-9);
    }
  }
  CHECK(nodes.back().position == Vec2{1, 1});
  CHECK_THROWS_AS(step_mobility(nodes, 0.0, mp, rng), std::invalid_argument);
}

TEST_CASE("mobility is reproducible from the stream") {
  MobilityParams mp;
  std::vector<Node> a{ue(1, 10, 10), ue(2, 20, 20)}, b = a;
  sim::RandomStream ra(5, 1), rb(5, 1);
  for (int i = 0; i < 100; ++i) {
    step_mobility(a, 1.0, mp, ra);
    step_mobility(b, 1.0, mp, rb);
  }
  CHECK(a[0].position == b[0].position);
  CHECK(a[1].position == b[1].position);
}

}
