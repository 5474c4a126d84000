#pragma once

#include <exception>
#include <string>
#include <string_view>

namespace polaron {

enum class ErrorKind {
  domain,       ///< argument outside an operation's precondition
  capacity,     ///< problem size exceeds an index type or a configured guard
  convergence,  ///< iterative solver did not reach its tolerance
  numerical,    ///< NaN/Inf or bound violation in a recurrence
  config,       ///< invalid or inconsistent run configuration
  io,           ///< filesystem failure
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for the library. Every error carries its kind so callers
/// (notably the CLI) can map it to an exit status without string matching.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message);

  const char* what() const noexcept override { return full_.c_str(); }
  ErrorKind kind() const noexcept { return kind_; }

  /// Pipeline stage that raised the error, empty if not attributed.
  const std::string& stage() const noexcept { return stage_; }

  /// Attach a stage label in place; use inside `catch (Error& e) { ...; throw; }`
  /// so the dynamic type survives the rethrow.
  void set_stage(std::string_view stage);

 private:
  ErrorKind kind_;
  std::string message_;
  std::string stage_;
  std::string full_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Raised when Lanczos exhausts its iteration budget. The best Ritz
/// estimates at that point are kept so callers can decide to proceed.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_min, double best_max,
                   double residual)
      : Error(ErrorKind::convergence, what),
        best_min_(best_min),
        best_max_(best_max),
        residual_(residual) {}

  double best_min() const noexcept { return best_min_; }
  double best_max() const noexcept { return best_max_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_min_;
  double best_max_;
  double residual_;
};

}  // namespace polaron
