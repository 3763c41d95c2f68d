#include "mscsim/scenario/sweep.hpp"

#include <atomic>
#include <cctype>
#include <thread>

#include <json.hpp>

#include "mscsim/km/bytes.hpp"
#include "mscsim/scenario/output.hpp"

namespace mscsim::scenario {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto p = s.find(sep);
    out.push_back(s.substr(0, p));
    if (p == std::string_view::npos) break;
    s.remove_prefix(p + 1);
  }
  return out;
}

std::string assignment_text(const Assignment& a) {
  std::string t;
  for (const auto& [k, v] : a) t += k + "=" + v + ";";
  return t;
}

}  // namespace

std::vector<GridAxis> parse_grid(std::string_view spec) {
  std::vector<GridAxis> axes;
  if (trim(spec).empty()) return axes;
  for (std::string_view part : split(spec, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ConfigError(0, std::string(part), "grid axis needs key=v1,v2,...");
    GridAxis axis{std::string(trim(part.substr(0, eq))), {}};
    if (!is_config_key(axis.key)) throw ConfigError(0, axis.key, "unknown key in grid");
    if (axis.key == "preset" || axis.key == "seed") {
      throw ConfigError(0, axis.key, "cannot be swept; sub-seeds are derived per point");
    }
    for (const auto& a : axes) {
      if (a.key == axis.key) throw ConfigError(0, axis.key, "appears twice in grid");
    }
    for (std::string_view v : split(part.substr(eq + 1), ',')) {
      v = trim(v);
      if (v.empty()) throw ConfigError(0, axis.key, "empty value in grid");
      axis.values.emplace_back(v);
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::uint64_t sub_seed(std::uint64_t seed, const Assignment& assignment) {
  const std::string text = assignment_text(assignment);
  const km::Digest d = km::sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  std::uint64_t h = 0;
  for (int i = 0; i < 8; ++i) h = (h << 8) | d[static_cast<std::size_t>(i)];
  return sim::splitmix64(seed ^ h);
}

std::vector<GridPoint> expand_grid(const Scenario& base, const std::vector<GridAxis>& axes) {
  std::vector<GridPoint> points;
  if (axes.empty()) return points;
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    GridPoint p{i, {}, base};
    std::size_t rest = i;
    std::vector<std::size_t> pick(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      pick[k] = rest % axes[k].values.size();
      rest /= axes[k].values.size();
    }
    for (std::size_t k = 0; k < axes.size(); ++k) {
      p.assignment.emplace_back(axes[k].key, axes[k].values[pick[k]]);
      set_config_value(p.scenario, axes[k].key, axes[k].values[pick[k]]);
    }
    p.scenario.seed.seed = sub_seed(base.seed.seed, p.assignment);
    try {
      validate_scenario(p.scenario);
    } catch (const ConfigError& e) {
      throw ConfigError(0, e.key(), "grid point " + assignment_text(p.assignment) + " " + e.detail());
    }
    points.push_back(std::move(p));
  }
  return points;
}

SweepResult run_sweep(const Scenario& base, std::string_view grid, std::size_t jobs) {
  SweepResult out;
  out.points = expand_grid(base, parse_grid(grid));
  out.results.resize(out.points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.points.size(); i = next++) out.results[i] = run_scenario(out.points[i].scenario);
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(jobs, out.points.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& r : out.results) out.ok = out.ok && r.ok;
  return out;
}

std::vector<std::string> render_sweep(const SweepResult& sweep) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    const GridPoint& p = sweep.points[i];
    // The run's own summary line, tagged with where it sits in the grid.
    auto j = nlohmann::ordered_json::parse(render_run(p.scenario, sweep.results[i]).back());
    j["type"] = "sweep-point";
    j["index"] = p.index;
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [k, v] : p.assignment) a[k] = v;
    j["assignment"] = std::move(a);
    if (!sweep.results[i].ok) j["error"] = sweep.results[i].error;
    out.push_back(j.dump());
  }
  return out;
}

}  // namespace mscsim::scenario
