#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace polaron {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Index into a phonon basis / row index of a sector matrix.
using Index = std::uint64_t;

}  // namespace polaron
