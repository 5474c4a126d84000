#include "polaron/error.hpp"

#include <utility>

namespace polaron {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message)
    : kind_(kind), message_(std::move(message)), full_(message_) {}

void Error::set_stage(std::string_view stage) {
  stage_ = std::string(stage);
  full_ = stage_ + ": " + message_;
}

}  // namespace polaron
