#include "polaron/version.hpp"

namespace polaron {

std::string_view version() noexcept { return POLARON_VERSION_STRING; }

}  // namespace polaron
