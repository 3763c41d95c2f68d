#include "mscsim/scenario/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "mscsim/km/bytes.hpp"
#include "mscsim/km/group.hpp"
#include "mscsim/scenario/presets.hpp"

namespace mscsim::scenario {
namespace {

struct KeySpec {
  std::string name;
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::string(const Scenario&)> get;
};

[[noreturn]] void bad(std::string_view key, const std::string& msg) {
  throw ConfigError(0, std::string(key), msg);
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size() || !std::isfinite(out)) {
    bad(key, "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <class T>
T parse_integer(std::string_view key, std::string_view v) {
  T out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size()) {
    bad(key, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  bad(key, "expected true or false, got '" + std::string(v) + "'");
}

std::string range_text(double lo, double hi, bool lo_open, bool hi_open) {
  return std::string(lo_open ? "(" : "[") + format_double(lo) + ", " + format_double(hi) + (hi_open ? ")" : "]");
}

template <class Access>
KeySpec real(std::string name, Access field, double lo, double hi, bool lo_open = false, bool hi_open = false) {
  return {name,
          [=](Scenario& s, std::string_view v) {
            const double x = parse_double(name, v);
            if ((lo_open ? x <= lo : x < lo) || (hi_open ? x >= hi : x > hi)) {
              bad(name, "value " + std::string(v) + " outside " + range_text(lo, hi, lo_open, hi_open));
            }
            field(s) = x;
          },
          [=](const Scenario& s) { return format_double(field(const_cast<Scenario&>(s))); }};
}

template <class T, class Access>
KeySpec integer(std::string name, Access field, T lo, T hi) {
  return {name,
          [=](Scenario& s, std::string_view v) {
            const T x = parse_integer<T>(name, v);
            if (x < lo || x > hi) {
              bad(name, "value " + std::string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            }
            field(s) = x;
          },
          [=](const Scenario& s) { return std::to_string(field(const_cast<Scenario&>(s))); }};
}

template <class Access>
KeySpec boolean(std::string name, Access field) {
  return {name, [=](Scenario& s, std::string_view v) { field(s) = parse_bool(name, v); },
          [=](const Scenario& s) { return std::string(field(const_cast<Scenario&>(s)) ? "true" : "false"); }};
}

template <class E, class Access>
KeySpec choice(std::string name, Access field, std::vector<std::pair<std::string, E>> options) {
  return {name,
          [=](Scenario& s, std::string_view v) {
            for (const auto& [text, value] : options) {
              if (v == text) {
                field(s) = value;
                return;
              }
            }
            std::string allowed;
            for (const auto& o : options) allowed += (allowed.empty() ? "" : ", ") + o.first;
            bad(name, "expected one of " + allowed + ", got '" + std::string(v) + "'");
          },
          [=](const Scenario& s) {
            for (const auto& [text, value] : options) {
              if (field(const_cast<Scenario&>(s)) == value) return text;
            }
            return std::string("?");
          }};
}

void add_link(std::vector<KeySpec>& keys, const std::string& prefix, sim::LinkModel Scenario::*link) {
  constexpr double kBig = 1e9;
  keys.push_back(real(prefix + ".rate", [=](Scenario& s) -> double& { return (s.*link).rate; }, 0, kBig, true));
  keys.push_back(real(prefix + ".loss", [=](Scenario& s) -> double& { return (s.*link).loss; }, 0, 1, false, true));
  keys.push_back(real(prefix + ".tx_energy", [=](Scenario& s) -> double& { return (s.*link).tx_energy; }, 0, kBig));
  keys.push_back(real(prefix + ".rx_energy", [=](Scenario& s) -> double& { return (s.*link).rx_energy; }, 0, kBig));
  keys.push_back(real(prefix + ".range", [=](Scenario& s) -> double& { return (s.*link).range; }, 0, kBig, true));
}

std::vector<KeySpec> build_registry() {
  using std::size_t;
  constexpr double kBig = 1e9;
  constexpr size_t kMaxCount = 1'000'000;
  std::vector<KeySpec> k;
#define F(expr) [](Scenario& s) -> auto& { return expr; }

  k.push_back({"preset",
               [](Scenario& s, std::string_view v) {
                 if (!v.empty() && !is_preset(v)) bad("preset", "unknown preset '" + std::string(v) + "'");
                 s.preset = std::string(v);
               },
               [](const Scenario& s) { return s.preset; }});
  k.push_back(integer<std::uint64_t>("seed", F(s.seed.seed), 0, std::numeric_limits<std::uint64_t>::max()));

  k.push_back(real("arena.width", F(s.arena.width), 0, kBig, true));
  k.push_back(real("arena.height", F(s.arena.height), 0, kBig, true));
  k.push_back(integer<size_t>("nodes.base_stations", F(s.base_stations), 1, 10'000));
  k.push_back(integer<size_t>("nodes.ues", F(s.ues), 1, 100'000));

  k.push_back(choice<MobilityModel>("mobility.model", F(s.mobility),
                                    {{"random-waypoint", MobilityModel::RandomWaypoint},
                                     {"group", MobilityModel::Group},
                                     {"static", MobilityModel::Static}}));
  k.push_back(real("mobility.speed_min", F(s.speed_min), 0, 1e4));
  k.push_back(real("mobility.speed_max", F(s.speed_max), 0, 1e4));

  k.push_back(real("msc.radius", F(s.msc_radius), 0, kBig, true));
  k.push_back(real("msc.battery_weight", F(s.election.battery_weight), 0, 1));
  k.push_back(real("msc.link_weight", F(s.election.link_weight), 0, 1));
  k.push_back(real("msc.degree_weight", F(s.election.degree_weight), 0, 1));
  k.push_back(real("msc.hysteresis", F(s.election.hysteresis), 0, 1));
  k.push_back(real("msc.battery_threshold", F(s.election.battery_threshold), 0, 1));

  k.push_back(real("pathloss.pl0_db", F(s.pathloss.pl0_db), 0, 300));
  k.push_back(real("pathloss.d0", F(s.pathloss.d0), 0, 1e4, true));
  k.push_back(real("pathloss.exponent", F(s.pathloss.exponent), 0, 10, true));

  k.push_back(choice<Protocol>("ncc.protocol", F(s.protocol), {{"ncc", Protocol::Ncc}, {"unicast", Protocol::Unicast}}));
  k.push_back(integer<size_t>("ncc.generation_size", F(s.generation_size), 1, 4096));
  k.push_back(integer<size_t>("ncc.payload_length", F(s.payload_length), 1, 1 << 20));
  k.push_back(integer<size_t>("ncc.generations", F(s.generations), 1, 4096));
  k.push_back(real("ncc.redundancy", F(s.redundancy), 1, 100));
  k.push_back(choice<ncc::PhaseMode>("ncc.mode", F(s.phase_mode),
                                     {{"sequential", ncc::PhaseMode::Sequential}, {"parallel", ncc::PhaseMode::Parallel}}));
  k.push_back(integer<size_t>("ncc.slot_budget", F(s.slot_budget), 0, 1'000'000'000));
  k.push_back(integer<size_t>("ncc.sessions", F(s.sessions), 0, kMaxCount));
  k.push_back(real("ncc.session_interval", F(s.session_interval), 0, kBig, true));

  add_link(k, "cellular", &Scenario::cellular);
  add_link(k, "short_range", &Scenario::short_range);

  k.push_back(boolean("km.enabled", F(s.km_enabled)));
  k.push_back(integer<size_t>("km.shareholders", F(s.km.n), 1, 100'000));
  k.push_back(integer<size_t>("km.threshold", F(s.km.t), 1, 100'000));
  k.push_back(integer<size_t>("km.requesters", F(s.km_requesters), 0, 100'000));
  k.push_back({"km.group",
               [](Scenario& s, std::string_view v) {
                 if (v.empty()) bad("km.group", "expected builtin, toy or a parameter file path");
                 s.km_group = std::string(v);
               },
               [](const Scenario& s) { return s.km_group; }});
  k.push_back(real("km.service_range", F(s.km_service_range), 0, kBig, true));
  k.push_back(integer<std::int64_t>("km.warrant_lifetime", F(s.km_warrant_lifetime), 1, 1'000'000'000'000));
  k.push_back(boolean("km.join", F(s.km_join)));
  k.push_back(boolean("km.authorized", F(s.km_authorized)));

  k.push_back(integer<size_t>("handover.epochs", F(s.ho_epochs), 0, 100'000'000));
  k.push_back(real("handover.dt", F(s.ho_dt), 0, 1e6, true));
  k.push_back(real("handover.hysteresis_db", F(s.ho.hysteresis_db), 0, 100));
  k.push_back(real("handover.rs_power_dbm", F(s.ho.rs_power_dbm), -100, 100));
  k.push_back(real("handover.sensitivity_dbm", F(s.ho.sensitivity_dbm), -300, 0));
  k.push_back(real("handover.tx_energy", F(s.ho_energy.tx), 0, kBig));
  k.push_back(real("handover.rx_energy", F(s.ho_energy.rx), 0, kBig));

  k.push_back(real("battery.initial", F(s.battery_initial), 0, 1));
  k.push_back(real("battery.mch_drain", F(s.battery_mch_drain), 0, 1));
  k.push_back(real("battery.member_drain", F(s.battery_member_drain), 0, 1));
  k.push_back(real("battery.energy_drain", F(s.battery_energy_drain), 0, 1));

  constexpr auto kMaxU64 = std::numeric_limits<std::uint64_t>::max();
  k.push_back(integer<std::uint64_t>("streams.mobility", F(s.seed.mobility_stream), 0, kMaxU64));
  k.push_back(integer<std::uint64_t>("streams.channel", F(s.seed.channel_stream), 0, kMaxU64));
  k.push_back(integer<std::uint64_t>("streams.coding", F(s.seed.coding_stream), 0, kMaxU64));
  k.push_back(integer<std::uint64_t>("streams.crypto", F(s.seed.crypto_stream), 0, kMaxU64));

  k.push_back(boolean("output.slot_log", F(s.slot_log)));
  k.push_back(boolean("output.handover_log", F(s.handover_log)));
#undef F

  std::sort(k.begin(), k.end(), [](const KeySpec& a, const KeySpec& b) { return a.name < b.name; });
  return k;
}

const std::vector<KeySpec>& registry() {
  static const std::vector<KeySpec> r = build_registry();
  return r;
}

const KeySpec* find_key(std::string_view key) {
  const auto& r = registry();
  auto it = std::lower_bound(r.begin(), r.end(), key, [](const KeySpec& k, std::string_view n) { return k.name < n; });
  return it != r.end() && it->name == key ? &*it : nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "key '" + key + "': ") + message),
      line_{line},
      key_{std::move(key)},
      detail_{message} {}

std::string_view to_string(MobilityModel m) noexcept {
  switch (m) {
    case MobilityModel::RandomWaypoint: return "random-waypoint";
    case MobilityModel::Group: return "group";
    case MobilityModel::Static: return "static";
  }
  return "?";
}

std::string_view to_string(Protocol p) noexcept {
  return p == Protocol::Ncc ? "ncc" : "unicast";
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.push_back(k.name);
  return out;
}

bool is_config_key(std::string_view key) { return find_key(key) != nullptr; }

void set_config_value(Scenario& s, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (!spec) bad(key, "unknown key");
  spec->set(s, value);
}

std::string get_config_value(const Scenario& s, std::string_view key) {
  const KeySpec* spec = find_key(key);
  if (!spec) bad(key, "unknown key");
  return spec->get(s);
}

void validate_scenario(const Scenario& s) {
  if (s.speed_min > s.speed_max) bad("mobility.speed_min", "exceeds mobility.speed_max");
  try {
    s.election.validate();
  } catch (const std::invalid_argument& e) {
    bad("msc.battery_weight", e.what());
  }
  if (s.km_enabled) {
    if (s.km.t > s.km.n) bad("km.threshold", "exceeds km.shareholders");
    if (s.km.n + s.km_requesters > s.ues) bad("km.shareholders", "km.shareholders + km.requesters exceeds nodes.ues");
    if (s.km_group != "builtin" && s.km_group != "toy") {
      try {
        km::load_group_params(s.km_group);
      } catch (const std::exception& e) {
        bad("km.group", e.what());
      }
    }
  }
  const std::uint64_t ids[] = {s.seed.mobility_stream, s.seed.channel_stream, s.seed.coding_stream,
                               s.seed.crypto_stream};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (ids[i] == ids[j]) bad("streams", "stream ids must be distinct");
    }
  }
  if (s.slot_budget != 0 && s.slot_budget < s.generation_size * s.generations) {
    bad("ncc.slot_budget", "smaller than the number of source packets per session");
  }
}

Scenario parse_config(std::string_view text) {
  struct Entry {
    std::size_t line;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  std::map<std::string, std::size_t> seen;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
    if (!is_config_key(key)) throw ConfigError(line_no, key, "unknown key");
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError(line_no, key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
    }
    entries.push_back({line_no, std::move(key), std::string(trim(line.substr(eq + 1)))});
  }

  Scenario s;
  bool has_seed = false;
  for (const auto& e : entries) {
    if (e.key != "preset") continue;
    try {
      set_config_value(s, e.key, e.value);
      if (!s.preset.empty()) apply_preset(s, s.preset);
    } catch (const ConfigError& err) {
      throw ConfigError(e.line, e.key, err.detail());
    } catch (const std::invalid_argument& err) {
      throw ConfigError(e.line, e.key, err.what());
    }
  }
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    try {
      set_config_value(s, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(e.line, e.key, err.detail());
    }
    has_seed |= e.key == "seed";
  }
  if (!has_seed) throw ConfigError(0, "seed", "missing; every scenario needs an explicit seed");
  validate_scenario(s);
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const Scenario& s) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : registry()) out.emplace_back(k.name, k.get(s));
  return out;
}

std::string serialize_config(const Scenario& s) {
  std::string out;
  for (const auto& [k, v] : config_echo(s)) out += k + " = " + v + "\n";
  return out;
}

std::string scenario_hash(const Scenario& s) {
  std::string text;
  for (const auto& [k, v] : config_echo(s)) {
    if (k != "seed") text += k + " = " + v + "\n";
  }
  const km::Digest d = km::sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return km::to_hex(d).substr(0, 16);
}

}  // namespace mscsim::scenario
