#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <stdexcept>
#include <vector>

#include "mscsim/sim/event_queue.hpp"
#include "mscsim/sim/link.hpp"
#include "mscsim/sim/random.hpp"

using namespace mscsim;

TEST_SUITE("sim") {

TEST_CASE("equal-time events run in insertion order") {
  sim::EventQueue q(true);
  std::vector<int> seen;
  for (int i = 0; i < 5; ++i) q.schedule(2.0, [&seen, i] { seen.push_back(i); });
  q.schedule(1.0, [&seen] { seen.push_back(-1); });
  CHECK(q.run_until(10.0) == 6);
  CHECK(seen == std::vector<int>{-1, 0, 1, 2, 3, 4});
}

TEST_CASE("empty queue dispatches nothing") {
  sim::EventQueue q;
  CHECK(q.run_until(100.0) == 0);
  CHECK(q.empty());
}

TEST_CASE("scheduling into the past is refused") {
  sim::EventQueue q;
  q.schedule(5.0, [] {});
  q.run_until(5.0);
  CHECK(q.now() == 5.0);
  CHECK_THROWS_AS(q.schedule(4.0, [] {}), std::invalid_argument);
  CHECK_NOTHROW(q.schedule(5.0, [] {}));
}

TEST_CASE("run_until stops at the horizon and keeps later events") {
  sim::EventQueue q;
  int ran = 0;
  q.schedule(1.0, [&] { ++ran; });
  q.schedule(3.0, [&] { ++ran; });
  CHECK(q.run_until(2.0) == 1);
  CHECK(q.pending() == 1);
  CHECK(q.run_until(3.0) == 1);
  CHECK(ran == 2);
}

TEST_CASE("1e5 random events dispatch in sorted (time, sequence) order") {
  sim::EventQueue q(true);
  std::mt19937_64 rng(99);
  std::vector<std::pair<double, std::uint64_t>> expected;
  for (int i = 0; i < 100000; ++i) {
    const double t = static_cast<double>(rng() % 5000) / 7.0;  // plenty of ties
    const auto seq = q.schedule(t, [] {});
    expected.emplace_back(t, seq);
  }
  std::sort(expected.begin(), expected.end());
  q.run_until(1e9);
  REQUIRE(q.trace().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    REQUIRE(q.trace()[i].time == expected[i].first);
    REQUIRE(q.trace()[i].sequence == expected[i].second);
  }
}

TEST_CASE("events scheduled from inside an action run in order") {
  sim::EventQueue q;
  std::vector<double> times;
  q.schedule(1.0, [&] {
    times.push_back(q.now());
    q.schedule(1.0, [&] { times.push_back(q.now()); });
    q.schedule(0.5 + q.now(), [&] { times.push_back(q.now()); });
  });
  q.schedule(1.2, [&] { times.push_back(q.now()); });
  q.run_until(10);
  CHECK(times == std::vector<double>{1.0, 1.0, 1.2, 1.5});
}

TEST_CASE("random streams are deterministic and separated by stream id") {
  sim::RandomStream a(42, 1), b(42, 1), c(42, 2), d(43, 1);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 100; ++i) {
    va.push_back(a.next());
    vb.push_back(b.next());
    vc.push_back(c.next());
    vd.push_back(d.next());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
}

TEST_CASE("below is uniform and in range") {
  sim::RandomStream r(1, 1);
  std::vector<int> counts(7);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto x = r.below(7);
    REQUIRE(x < 7);
    ++counts[x];
  }
  // chi-square with 6 dof; 22.46 is the 0.999 quantile
  double chi = 0;
  for (int c : counts) chi += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  CHECK(chi < 22.46);
  CHECK_THROWS_AS(r.below(0), std::invalid_argument);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("lossless link delivers to every in-range receiver") {
  sim::RandomStream rng(3, 2);
  sim::EnergyLedger ledger;
  const auto link = sim::LinkModel::short_range_default();
  const sim::Endpoint tx{0, {0, 0}};
  const std::vector<sim::Endpoint> rx{{1, {10, 0}}, {2, {0, 49}}, {3, {60, 0}}};
  const auto res = sim::transmit(link, tx, rx, rng, ledger);
  CHECK(res.receptions[0].outcome == sim::Delivery::Delivered);
  CHECK(res.receptions[1].outcome == sim::Delivery::Delivered);
  CHECK(res.receptions[2].outcome == sim::Delivery::OutOfRange);
  CHECK(res.energy == doctest::Approx(link.tx_energy + 2 * link.rx_energy));
}

TEST_CASE("loss must lie in [0, 1)") {
  auto link = sim::LinkModel::cellular_default();
  link.loss = 1.0;
  CHECK_THROWS_AS(link.validate(), std::invalid_argument);
  link.loss = 0.999;
  CHECK_NOTHROW(link.validate());
  link.loss = -0.1;
  CHECK_THROWS_AS(link.validate(), std::invalid_argument);
}

TEST_CASE("erasures follow the binomial law") {
  sim::RandomStream rng(4, 2);
  sim::EnergyLedger ledger(false);
  auto link = sim::LinkModel::cellular_default();
  link.loss = 0.1;
  const sim::Endpoint tx{0, {0, 0}};
  const sim::Endpoint rx{1, {1, 1}};
  const int n = 100000;
  int delivered = 0;
  for (int i = 0; i < n; ++i) delivered += sim::transmit(link, tx, std::span(&rx, 1), rng, ledger).delivered(0);
  const double sigma = std::sqrt(n * 0.9 * 0.1);
  CHECK(std::abs(delivered - 0.9 * n) <= 3 * sigma);
}

TEST_CASE("out-of-range receivers consume no randomness") {
  auto link = sim::LinkModel::cellular_default();
  link.loss = 0.5;
  sim::RandomStream a(5, 2), b(5, 2);
  sim::EnergyLedger la, lb;
  const sim::Endpoint tx{0, {0, 0}};
  const std::vector<sim::Endpoint> near{{1, {1, 0}}};
  const std::vector<sim::Endpoint> mixed{{1, {1, 0}}, {2, {5000, 0}}};
  for (int i = 0; i < 100; ++i) {
    sim::transmit(link, tx, near, a, la);
    sim::transmit(link, tx, mixed, b, lb);
  }
  CHECK(a.next() == b.next());
}

TEST_CASE("energy report equals a replay of the transmission log") {
  sim::RandomStream rng(6, 2);
  sim::EnergyLedger ledger(true);
  CHECK(ledger.energy_report().total == 0.0);
  auto cell = sim::LinkModel::cellular_default();
  auto sr = sim::LinkModel::short_range_default();
  sr.loss = 0.3;
  const std::vector<sim::Endpoint> nodes{{1, {0, 0}}, {2, {10, 0}}, {3, {20, 0}}, {4, {200, 0}}};
  const sim::Endpoint bs{0, {0, 500}};
  for (int i = 0; i < 500; ++i) {
    if (i % 3 == 0) {
      sim::transmit(cell, bs, std::span(&nodes[i % 4], 1), rng, ledger, i);
    } else {
      const auto& s = nodes[i % 3];
      std::vector<sim::Endpoint> others;
      for (const auto& n : nodes) {
        if (n.id != s.id) others.push_back(n);
      }
      sim::transmit(sr, s, others, rng, ledger, i);
    }
  }
  // independent fold over the log
  std::map<NodeId, double> per_node;
  std::array<double, 2> per_kind{};
  std::array<std::uint64_t, 2> count{};
  double total = 0;
  for (const auto& rec : ledger.log()) {
    const auto k = static_cast<std::size_t>(rec.kind);
    per_node[rec.sender] += rec.tx_energy;
    per_kind[k] += rec.tx_energy;
    total += rec.tx_energy;
    ++count[k];
    for (const auto& r : rec.receptions) {
      if (r.outcome == sim::Delivery::OutOfRange) continue;
      per_node[r.receiver] += rec.rx_energy;
      per_kind[k] += rec.rx_energy;
      total += rec.rx_energy;
    }
  }
  const auto& rep = ledger.energy_report();
  CHECK(rep.total == total);
  CHECK(rep.per_kind == per_kind);
  CHECK(rep.transmissions == count);
  for (const auto& [id, e] : rep.per_node) CHECK(e.total() == doctest::Approx(per_node[id]).epsilon(1e-12));
  CHECK(rep.kind_count(sim::LinkKind::Cellular) == 167);
  CHECK(rep.per_kind[0] >= 167 * cell.tx_energy);
}

}
