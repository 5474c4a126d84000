#pragma once

#include <span>
#include <string_view>

#include "config.hpp"

namespace polaron::app {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view text;  ///< INI source
};

std::span<const Preset> presets() noexcept;

/// Throws ConfigError listing the known names.
KeyValues preset_values(std::string_view name);

}  // namespace polaron::app
