#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <polaron/params.hpp>
#include <polaron/types.hpp>

// Run configuration for the polaron tool.
//
// Grammar of the key-value format:
//
//   # comment            (also ';'; a '#' after whitespace ends a value)
//   [section]
//   key = value
//   key = v1, v2, v3     (lists)
//
// Every key lives in a section and is addressed as "section.key". JSON input
// uses the same layout: an object of sections holding scalars or arrays. A
// metadata file written by the tool is accepted too, through its "config"
// member.

namespace polaron::app {

enum class Mode { params, spectrum, oracle, ramsey, sweep };
enum class Format { csv, json };

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Format format) noexcept;

/// Raw "section.key" -> value text, in the order std::map gives.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_ini(std::string_view text, std::string_view origin = "<string>");
KeyValues parse_json(std::string_view text, std::string_view origin = "<string>");

/// Picks the parser from the extension (.json) or a leading '{'.
KeyValues load_config_file(const std::filesystem::path& path);

/// Applies "section.key=value" overrides on top of `base`.
void apply_override(KeyValues& base, std::string_view assignment);

/// Default adiabaticity ratios of a sweep.
inline const std::vector<double> kDefaultSweepRatios{0.125, 0.25, 0.5, 1.0, 2.0};

struct RunConfig {
  Mode mode = Mode::spectrum;
  Format format = Format::csv;
  std::filesystem::path output = ".";

  std::optional<CircuitParams> circuit;
  std::vector<double> t_e;     ///< explicit hopping amplitudes (Hz)
  std::vector<double> ratios;  ///< hbar omega_delta / t_e
  double g_h = 0.0;
  double omega_delta = 0.0;
  int n_sites = 2;
  int max_phonons = 0;

  int n_moments = 4096;
  double epsilon = 0.01;

  std::optional<std::vector<int>> k_list;  ///< unset means every sector
  Index max_sector_dim = 100000;           ///< 0 disables the guard

  int ramsey_source = 0;
  int ramsey_bins = 400;

  /// The validated key-value set this config was built from.
  KeyValues resolved;
};

/// Schema validation and defaults. Throws ConfigError naming the key.
RunConfig resolve(const KeyValues& values);

/// Every hopping point the config describes, in order. Spectrum, oracle and
/// ramsey modes require exactly one; params and sweep accept several.
std::vector<EffectiveParams> hopping_points(const RunConfig& config);

/// k indices to evaluate for N sites.
std::vector<int> k_indices(const RunConfig& config);

}  // namespace polaron::app
