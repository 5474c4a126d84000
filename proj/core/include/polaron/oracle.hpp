#pragma once

#include <span>
#include <vector>

#include "polaron/hilbert.hpp"
#include "polaron/params.hpp"
#include "polaron/types.hpp"

// Reference solutions that do not go through the sparse KPM pipeline:
// dense diagonalization in real space and per momentum sector, the
// atomic-limit (t_e = 0) spectrum, and retarded Green's functions from
// exact time evolution.
//
// Real-space states |n, m> (excitation on site n, phonons m) are indexed as
// n * D_ph + rank(m). Energies are in hbar omega_delta, times in seconds,
// frequencies in Hz.

namespace polaron {

/// Largest matrix dimension any dense routine accepts.
inline constexpr Index kDenseDimensionLimit = 20000;

Index real_space_dim(const PhononBasis& basis);

/// Row-major real-space Hamiltonian of the one-excitation problem
/// (N * D_ph square). Throws CapacityError above kDenseDimensionLimit.
std::vector<double> real_space_hamiltonian(const PhononBasis& basis, const EffectiveParams& params);

/// Ascending eigenvalues of real_space_hamiltonian.
std::vector<double> real_space_spectrum(const PhononBasis& basis, const EffectiveParams& params);

/// Row-major sector matrix <K,m'|H|K,m>, built by applying the real-space
/// Hamiltonian to explicit Bloch sums and projecting back.
std::vector<Complex> dense_sector_matrix(const KSector& sector, const PhononBasis& basis,
                                         const EffectiveParams& params);

struct DenseSpectrum {
  KSector sector;
  std::vector<double> eigenvalues;  ///< ascending, hbar omega_delta
  std::vector<double> weights;      ///< |<psi_j| c_k^dagger |0>|^2
  double omega_delta_hz = 1.0;

  double weight_sum() const;
};

DenseSpectrum dense_spectrum(const KSector& sector, const PhononBasis& basis,
                             const EffectiveParams& params);

enum class Broadening { gaussian, lorentzian };

/// Sum of normalized kernels of width `width_hz` (Gaussian sigma or
/// Lorentzian half width) at each eigenvalue, as a density per Hz.
std::vector<double> dense_spectral_function(const DenseSpectrum& spectrum,
                                            std::span<const double> omega_hz, double width_hz,
                                            Broadening kind = Broadening::gaussian);

/// Gaussian broadening with one sigma per eigenvalue.
std::vector<double> dense_spectral_function(const DenseSpectrum& spectrum,
                                            std::span<const double> omega_hz,
                                            std::span<const double> sigma_hz);

/// Approximate Jackson kernel width at scaled position x for n_moments
/// moments, in scaled units.
double jackson_sigma(double x, int n_moments);

struct PeakList {
  std::vector<double> energies;  ///< hbar omega_delta
  std::vector<double> omega_hz;
  std::vector<double> weights;
};

/// t_e = 0 spectrum: peaks at m - g_h^2 with weights exp(-g^2) g^(2m) / m!.
PeakList atomic_limit_spectrum(double g_h, double omega_delta_hz, int n_peaks);

/// Dense solve of the single-site problem H = b^dagger b + g (b + b^dagger)
/// truncated at max_phonons, weights taken on the zero-phonon state.
PeakList single_site_spectrum(double g_h, double omega_delta_hz, int max_phonons);

enum class GreensKind { anticommutator, commutator };

struct GreensSeries {
  int k_index = 0;
  double k_value = 0.0;
  std::vector<double> times;    ///< seconds
  std::vector<Complex> values;  ///< hbar G(t), dimensionless
  double eta = 0.0;             ///< damping rate for frequency transforms (1/s)
  GreensKind kind = GreensKind::anticommutator;
};

/// hbar G_+(k, t) = -i theta(t) sum_j w_j exp(-i E_j t), theta(0) = 1.
GreensSeries evolve_greens(const DenseSpectrum& spectrum, std::span<const double> times);
GreensSeries evolve_greens(const KSector& sector, const PhononBasis& basis,
                           const EffectiveParams& params, std::span<const double> times);

/// Flips the sign: G_- = -G_+ in the one-excitation sector.
GreensSeries to_commutator(const GreensSeries& g);

/// A_+(nu) = -2 Im int_0^inf hbar G_+(t) exp(i 2 pi nu t - eta t) dt by the
/// trapezoid rule on the stored (uniform or not) time grid. With eta the
/// result approximates Lorentzians of half width eta / (2 pi) Hz.
std::vector<double> greens_to_spectrum(const GreensSeries& g, std::span<const double> omega_hz,
                                       double eta);

}  // namespace polaron
