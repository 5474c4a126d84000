#pragma once

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace polaron::app {

struct ParamsRow {
  double t_e_hz = 0.0;
  double adiabaticity_ratio = 0.0;
  double lambda_h = 0.0;
  bool small_polaron = false;
  bool adiabatic = false;
};

struct ParamsReport {
  std::optional<double> chi_hz;
  std::optional<double> dispersive_ratio;
  std::optional<double> drive_ratio;
  double g_h = 0.0;
  double omega_delta_hz = 0.0;
  std::vector<ParamsRow> rows;
};

ParamsReport params_report(const RunConfig& config);
std::string format_params_report(const ParamsReport& report);

struct RunResult {
  std::vector<std::filesystem::path> files;
};

/// Executes the configured mode, writing artifacts under config.output.
/// Progress goes to `log`; the params report goes to `out`.
RunResult run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// config/domain 2, capacity 3, convergence 4, numerical 5, io and anything
/// else 1.
int exit_code(const std::exception& e) noexcept;

}  // namespace polaron::app
