#pragma once

// Scenario description and its text format.
//
//   # comment
//   preset = ambulance
//   seed = 42
//   [ncc]
//   redundancy = 1.05
//
// Keys inside a [section] are read as "section.key"; dotted keys are accepted
// anywhere. The preset (if any) is applied first, then every other key
// overrides it regardless of its position in the file.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mscsim/handover/handover.hpp"
#include "mscsim/km/sharing.hpp"
#include "mscsim/ncc/session.hpp"
#include "mscsim/net/mobility.hpp"
#include "mscsim/net/topology.hpp"
#include "mscsim/sim/link.hpp"
#include "mscsim/sim/random.hpp"

namespace mscsim::scenario {

enum class MobilityModel { RandomWaypoint, Group, Static };
enum class Protocol { Ncc, Unicast };

struct Scenario {
  std::string preset;  // empty when none
  sim::RunSeed seed;

  net::Arena arena;
  std::size_t base_stations = 1;
  std::size_t ues = 8;

  MobilityModel mobility = MobilityModel::RandomWaypoint;
  double speed_min = 1.0;
  double speed_max = 10.0;

  double msc_radius = 20.0;
  net::ElectionPolicy election;
  net::PathLoss pathloss;

  Protocol protocol = Protocol::Ncc;
  std::size_t generation_size = 64;
  std::size_t payload_length = 1024;
  std::size_t generations = 1;
  double redundancy = 1.0;
  ncc::PhaseMode phase_mode = ncc::PhaseMode::Sequential;
  std::size_t slot_budget = 0;
  std::size_t sessions = 0;
  double session_interval = 1.0;
  sim::LinkModel cellular = sim::LinkModel::cellular_default();
  sim::LinkModel short_range = sim::LinkModel::short_range_default();

  bool km_enabled = false;
  km::KMConfig km;  // n = shareholders, t = threshold
  std::size_t km_requesters = 0;
  std::string km_group = "builtin";  // "builtin", "toy" or a parameter file path
  double km_service_range = 100.0;
  std::int64_t km_warrant_lifetime = 3600;
  bool km_join = false;
  bool km_authorized = true;

  std::size_t ho_epochs = 0;
  double ho_dt = 1.0;
  handover::HandoverConfig ho;
  handover::MessageEnergy ho_energy;

  double battery_initial = 1.0;
  double battery_mch_drain = 0.0;     // per second
  double battery_member_drain = 0.0;  // per second
  double battery_energy_drain = 0.0;  // per energy unit spent on sessions

  bool slot_log = false;
  bool handover_log = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::string_view to_string(MobilityModel m) noexcept;
std::string_view to_string(Protocol p) noexcept;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);

  std::size_t line() const noexcept { return line_; }  // 0 when not tied to a line
  const std::string& key() const noexcept { return key_; }
  /// The message without the location prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string key_;
  std::string detail_;
};

/// Every key the format knows, sorted.
std::vector<std::string> config_keys();
bool is_config_key(std::string_view key);

/// Sets one key from its text value. Throws ConfigError (line 0) on an unknown
/// key or a bad value. Cross-key checks are left to validate_scenario.
void set_config_value(Scenario& s, std::string_view key, std::string_view value);
std::string get_config_value(const Scenario& s, std::string_view key);

/// Throws ConfigError naming the keys involved.
void validate_scenario(const Scenario& s);

/// Parses and validates. A seed is mandatory.
Scenario parse_config(std::string_view text);
Scenario load_config(const std::string& path);

/// Canonical form: one "key = value" line per key, sorted, preset and seed
/// included. parse_config(serialize_config(s)) == s.
std::string serialize_config(const Scenario& s);

/// Key/value pairs of the canonical form.
std::vector<std::pair<std::string, std::string>> config_echo(const Scenario& s);

/// First 16 hex digits of SHA-256 over the canonical form without the seed.
std::string scenario_hash(const Scenario& s);

}  // namespace mscsim::scenario
