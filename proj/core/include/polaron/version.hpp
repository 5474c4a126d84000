#pragma once

#include <string_view>

namespace polaron {

/// Library version as configured by CMake, e.g. "0.1.0".
std::string_view version() noexcept;

}  // namespace polaron
