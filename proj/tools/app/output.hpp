#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <polaron/kpm.hpp>

namespace polaron::app {

/// 17 significant digits, '.' decimal point, no locale.
std::string format_double(double value);

/// Writes `content` verbatim. Throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

inline constexpr std::string_view kSpectrumHeader =
    "k_index,k_value,omega_hz,omega_dimensionless,spectral_density";

/// One row per (k, node), in the order given. `spectral_density` is per Hz.
std::string spectrum_csv(std::span<const SpectralResult> results);

struct SpectrumRow {
  int k_index = 0;
  double k_value = 0.0;
  double omega_hz = 0.0;
  double omega_dimensionless = 0.0;
  double spectral_density = 0.0;
};

/// Parses spectrum_csv output. Throws IoError on malformed input.
std::vector<SpectrumRow> parse_spectrum_csv(std::string_view text);

}  // namespace polaron::app
