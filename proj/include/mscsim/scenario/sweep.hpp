#pragma once

// Parameter sweeps. Grid syntax: "key=v1,v2;key2=w1,w2". Points are the
// cartesian product in the order written, first key slowest.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mscsim/scenario/runner.hpp"

namespace mscsim::scenario {

struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

using Assignment = std::vector<std::pair<std::string, std::string>>;

/// Throws ConfigError for unknown keys, the keys preset and seed, empty value
/// lists and malformed text. An empty spec is an empty grid.
std::vector<GridAxis> parse_grid(std::string_view spec);

struct GridPoint {
  std::size_t index = 0;
  Assignment assignment;
  Scenario scenario;
};

/// Sub-seed derived from the base seed and the assignment text.
std::uint64_t sub_seed(std::uint64_t seed, const Assignment& assignment);

/// Applies and validates every point up front; throws ConfigError on the
/// first bad one. No axes means no points.
std::vector<GridPoint> expand_grid(const Scenario& base, const std::vector<GridAxis>& axes);

struct SweepResult {
  std::vector<GridPoint> points;
  std::vector<RunResult> results;  // same order as points
  bool ok = true;
};

/// Runs every point on up to `jobs` threads. Results do not depend on jobs.
SweepResult run_sweep(const Scenario& base, std::string_view grid, std::size_t jobs);

std::vector<std::string> render_sweep(const SweepResult& sweep);

}  // namespace mscsim::scenario
