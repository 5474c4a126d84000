#pragma once

#include <span>
#include <vector>

#include "polaron/hilbert.hpp"
#include "polaron/oracle.hpp"
#include "polaron/params.hpp"
#include "polaron/types.hpp"

// Simulated many-body Ramsey interference: pi/2 pulse on qubit n, free
// evolution, pi/2 pulse on qubit n', readout of sigma^z on n'.
//
// The state lives in (vacuum, zero phonons) + (one excitation, phonons <= M);
// a single pulse on the vacuum never leaves that space. Pulses are
// R(theta, phi) = cos(theta/2) + i sin(theta/2) (sigma^x cos phi - sigma^y sin phi)
// with logical 1 = spin up = excitation present and sigma^z |up> = +|up>.
//
// With A(t) = <1_n', 0| U(t) |1_n, 0> the readout is
//   M(phi1, phi2, t) = Re[exp(i (phi1 - phi2)) A(t)],
// so phase differences 0 and -/+ pi/2 give Re A, Im A and -Im A.

namespace polaron {

struct RamseyOutcome {
  int n = 0;        ///< first pulse
  int n_prime = 0;  ///< second pulse and readout
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::vector<double> times;     ///< seconds
  std::vector<double> measured;  ///< <sigma^z_n'>
};

class RamseySimulator {
 public:
  /// Diagonalizes the real-space one-excitation Hamiltonian once. Throws
  /// CapacityError above kDenseDimensionLimit.
  RamseySimulator(const PhononBasis& basis, const EffectiveParams& params);

  int n_sites() const noexcept { return n_sites_; }

  /// <sigma^z_n'> after R_n'(phi2) U(t) R_n(phi1) |vacuum>.
  double measure(int n, int n_prime, double phi1, double phi2, double t) const;

  RamseyOutcome measure(int n, int n_prime, double phi1, double phi2,
                        std::span<const double> times) const;

  /// <1_n', 0| U(t) |1_n, 0>, for checks.
  Complex amplitude(int n, int n_prime, double t) const;

 private:
  void check_sites(int n, int n_prime) const;

  int n_sites_;
  Index phonon_dim_;
  Index dim_;
  double angular_;                    // 2 pi omega_delta
  std::vector<double> eigenvalues_;   // hbar omega_delta
  std::vector<double> eigenvectors_;  // column-major dim x dim
};

/// Runs source site `n` against every readout site with phase differences
/// 0, +pi/2 and -pi/2 (phi2 fixed at `phi2`).
std::vector<RamseyOutcome> ramsey_dataset(const RamseySimulator& sim, int n,
                                          std::span<const double> times, double phi2 = 0.0);

/// Combines the three quadratures per readout site into A_{n'n}(t) and
/// Fourier transforms over n' - n:
///   hbar G_+(k, t) = -i sum_d exp(-i k d) A_{n+d, n}(t).
/// Throws DomainError if a quadrature is missing, the source sites differ or
/// the time grids do not match.
GreensSeries ramsey_reconstruct_greens(std::span<const RamseyOutcome> outcomes, int k_index,
                                       int n_sites);

}  // namespace polaron
