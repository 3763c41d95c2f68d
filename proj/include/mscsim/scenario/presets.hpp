#pragma once

#include <span>
#include <string_view>

#include "mscsim/scenario/config.hpp"

namespace mscsim::scenario {

struct PresetInfo {
  std::string_view name;
  std::string_view description;
};

std::span<const PresetInfo> presets() noexcept;
bool is_preset(std::string_view name) noexcept;

/// Resets s to the preset's values, keeping s.seed. Throws
/// std::invalid_argument for an unknown name.
void apply_preset(Scenario& s, std::string_view name);

}  // namespace mscsim::scenario
