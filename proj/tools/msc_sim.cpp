// msc-sim: run scenarios and sweeps, list presets, check config files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mscsim/scenario/config.hpp"
#include "mscsim/scenario/output.hpp"
#include "mscsim/scenario/presets.hpp"
#include "mscsim/scenario/runner.hpp"
#include "mscsim/scenario/sweep.hpp"

namespace sc = mscsim::scenario;

namespace {

constexpr int kRunFailed = 1;
constexpr int kBadInput = 2;

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, std::string out, bool quiet) {
  sc::Scenario s = sc::load_config(config);
  if (seed) s.seed.seed = *seed;
  const sc::RunResult r = sc::run_scenario(s);
  const std::filesystem::path path = out.empty() ? sc::output_dir() / (r.run_id + ".jsonl") : std::filesystem::path(out);
  sc::write_lines_atomic(path, sc::render_run(s, r));
  if (!quiet) std::cout << sc::summary_table(r) << "  output              " << path.string() << "\n";
  if (!r.ok) std::cerr << "msc-sim: run failed: " << r.error << "\n";
  return r.ok ? 0 : kRunFailed;
}

int cmd_sweep(const std::string& config, const std::string& grid, std::size_t jobs, std::string out, bool quiet) {
  const sc::Scenario s = sc::load_config(config);
  const sc::SweepResult sw = sc::run_sweep(s, grid, jobs);
  const std::filesystem::path path =
      out.empty() ? sc::output_dir() / (sc::make_run_id(s) + "-sweep.jsonl") : std::filesystem::path(out);
  sc::write_lines_atomic(path, sc::render_sweep(sw));
  if (!quiet) {
    std::cout << "sweep: " << sw.points.size() << " points -> " << path.string() << "\n";
    for (std::size_t i = 0; i < sw.points.size(); ++i) {
      std::cout << "  [" << i << "]";
      for (const auto& [k, v] : sw.points[i].assignment) std::cout << " " << k << "=" << v;
      const auto& sum = sw.results[i].summary;
      std::cout << "  util " << sum.cellular_utilization << "  ratio " << sum.decoding_ratio
                << (sw.results[i].ok ? "" : "  FAILED") << "\n";
    }
  }
  return sw.ok ? 0 : kRunFailed;
}

int cmd_presets(const std::string& show) {
  if (show.empty()) {
    for (const auto& p : sc::presets()) std::cout << p.name << "\t" << p.description << "\n";
    return 0;
  }
  sc::Scenario s;
  sc::apply_preset(s, show);
  std::cout << sc::serialize_config(s);
  return 0;
}

int cmd_validate(const std::string& config, bool print) {
  const sc::Scenario s = sc::load_config(config);
  if (print) std::cout << sc::serialize_config(s);
  else std::cout << "ok " << sc::scenario_hash(s) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile small cell simulator"};
  app.require_subcommand(1);

  std::string config, out, grid, show;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool quiet = false, print = false;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config, "Scenario file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out, "Output file (default: $MSC_SIM_OUT_DIR or ., named after the run id)");
  run->add_flag("-q,--quiet", quiet, "No summary on stdout");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  sweep->add_option("config", config, "Scenario template")->required();
  sweep->add_option("--grid", grid, "key=v1,v2;key2=w1,w2")->required();
  sweep->add_option("-j,--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out, "Output file");
  sweep->add_flag("-q,--quiet", quiet, "No summary on stdout");

  auto* presets = app.add_subcommand("presets", "List built-in presets");
  presets->add_option("--show", show, "Print one preset as a full config");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("config", config, "Scenario file")->required();
  validate->add_flag("--print", print, "Print the canonical form");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, seed, out, quiet);
    if (*sweep) return cmd_sweep(config, grid, jobs, out, quiet);
    if (*presets) return cmd_presets(show);
    if (*validate) return cmd_validate(config, print);
  } catch (const sc::ConfigError& e) {
    std::cerr << "msc-sim: " << config << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "msc-sim: " << e.what() << "\n";
    return kRunFailed;
  }
  return 0;
}
