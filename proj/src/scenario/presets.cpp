#include "mscsim/scenario/presets.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace mscsim::scenario {
namespace {

constexpr std::array<PresetInfo, 5> kPresets{{
    {"ambulance", "1 BS, one 8-UE cell riding in a vehicle, NCC offload with 10% short-range loss, KM on"},
    {"baseline-unicast", "ambulance with every packet sent to every UE by cellular unicast"},
    {"ho-comparison", "9 BSs, 8 independent UEs at vehicle speed, 1000 handover epochs"},
    {"km-bootstrap", "13 shareholders, threshold 3, 3 requesters that get credentials and join"},
    {"single-ue", "one UE alone: NCC degenerates to plain cellular delivery"},
}};

void ambulance(Scenario& s) {
  s.arena = {1000.0, 1000.0};
  s.base_stations = 1;
  s.ues = 8;
  s.mobility = MobilityModel::Group;
  s.speed_min = 5.0;
  s.speed_max = 15.0;
  s.msc_radius = 20.0;

  s.protocol = Protocol::Ncc;
  s.generation_size = 64;
  s.payload_length = 1024;
  s.generations = 1;
  // ceil(1.05 * 64) = 68 coded packets for 8 UEs: 68 / 512 of unicast.
  s.redundancy = 1.05;
  s.sessions = 50;
  s.session_interval = 2.0;
  s.short_range.loss = 0.1;

  s.km_enabled = true;
  s.km = {6, 3};
  s.km_requesters = 2;
  s.km_service_range = 100.0;
  s.km_join = true;

  s.ho_epochs = 100;
  s.ho_dt = 1.0;

  s.battery_mch_drain = 0.001;
  s.battery_member_drain = 0.0002;
  s.battery_energy_drain = 0.00005;
}

void baseline_unicast(Scenario& s) {
  ambulance(s);
  s.protocol = Protocol::Unicast;
}

void ho_comparison(Scenario& s) {
  s.arena = {2000.0, 2000.0};
  s.base_stations = 9;
  s.ues = 8;
  s.mobility = MobilityModel::RandomWaypoint;
  s.speed_min = 10.0;
  s.speed_max = 30.0;
  s.sessions = 0;
  s.km_enabled = false;
  s.ho_epochs = 1000;
  s.ho_dt = 1.0;
}

void km_bootstrap(Scenario& s) {
  s.arena = {150.0, 150.0};
  s.base_stations = 1;
  s.ues = 16;
  s.mobility = MobilityModel::Static;
  s.sessions = 0;
  s.km_enabled = true;
  s.km = {13, 3};
  s.km_requesters = 3;
  s.km_service_range = 100.0;
  s.km_join = true;
  s.ho_epochs = 0;
}

void single_ue(Scenario& s) {
  s.base_stations = 1;
  s.ues = 1;
  s.mobility = MobilityModel::Static;
  s.redundancy = 1.0;
  s.sessions = 10;
  s.km_enabled = false;
  s.ho_epochs = 0;
}

}  // namespace

std::span<const PresetInfo> presets() noexcept { return kPresets; }

bool is_preset(std::string_view name) noexcept {
  return std::any_of(kPresets.begin(), kPresets.end(), [&](const PresetInfo& p) { return p.name == name; });
}

void apply_preset(Scenario& s, std::string_view name) {
  Scenario fresh;
  fresh.seed = s.seed;
  if (name == "ambulance") ambulance(fresh);
  else if (name == "baseline-unicast") baseline_unicast(fresh);
  else if (name == "ho-comparison") ho_comparison(fresh);
  else if (name == "km-bootstrap") km_bootstrap(fresh);
  else if (name == "single-ue") single_ue(fresh);
  else throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  fresh.preset = std::string(name);
  s = std::move(fresh);
}

}  // namespace mscsim::scenario
