#pragma once

#include <span>
#include <vector>

#include "polaron/hamiltonian.hpp"
#include "polaron/hilbert.hpp"
#include "polaron/params.hpp"
#include "polaron/types.hpp"

// Kernel polynomial method for A+(k, omega).
//
// The sector Hamiltonian is mapped onto Hbar = a (H - b) with
// a = 2 (1 - eps) / (E_max - E_min) and b = (E_max + E_min) / 2, so its
// spectrum sits inside [-(1 - eps), 1 - eps]. Moments
// mu_r = <0| c_k T_r(Hbar) c_k^dagger |0> are generated two per matvec and
// reconstructed with Jackson damping on the Chebyshev nodes
// xbar_j = cos(pi (j + 1/2) / N_C).
//
// Units: energies are in hbar omega_delta. The reconstructed density is
// normalized per linear frequency (1/Hz), i.e. the integral of A over nu is 1;
// the per-(hbar omega_delta) density is kept alongside.

namespace polaron {

/// Affine map between physical energies and the Chebyshev interval.
struct ChebyshevScale {
  double scale = 1.0;  ///< a
  double shift = 0.0;  ///< b
  double epsilon = 0.01;
  double e_min = -1.0;
  double e_max = 1.0;

  double to_scaled(double energy) const { return scale * (energy - shift); }
  double to_energy(double scaled) const { return scaled / scale + shift; }
};

/// Hbar = a (H - b), applied on the fly without rewriting the matrix.
class RescaledOperator {
 public:
  RescaledOperator(const SparseHamiltonian& h, ChebyshevScale map) : h_(&h), map_(map) {}

  const SparseHamiltonian& underlying() const noexcept { return *h_; }
  const ChebyshevScale& map() const noexcept { return map_; }
  Index dim() const noexcept { return h_->dim(); }

  /// y = Hbar x.
  void apply(std::span<const Complex> x, std::span<Complex> y) const;

  /// out = 2 Hbar cur - prev. `out` may alias `prev`.
  void chebyshev_step(std::span<const Complex> cur, std::span<const Complex> prev,
                      std::span<Complex> out) const;

 private:
  const SparseHamiltonian* h_;
  ChebyshevScale map_;
};

/// Throws DomainError when e_max <= e_min or epsilon is outside (0, 1).
RescaledOperator rescale(const SparseHamiltonian& h, const SpectralBounds& bounds,
                         double epsilon = 0.01);

struct MomentSeries {
  int k_index = 0;
  std::vector<double> moments;
  ChebyshevScale map;
  /// Largest |Im| discarded from the moment inner products.
  double max_imag_residue = 0.0;

  int n_moments() const noexcept { return static_cast<int>(moments.size()); }
};

/// Chebyshev recurrence holding exactly three state vectors. n_moments must
/// be even and >= 2; N_C moments cost N_C / 2 matvecs. Throws NumericalError
/// if an iterate turns non-finite or a moment leaves [-1, 1] (which means the
/// spectral bounds were wrong).
MomentSeries compute_moments(const RescaledOperator& op, std::span<const Complex> start,
                             int n_moments);

/// Jackson damping factors g_r, r = 0 .. n_moments - 1.
std::vector<double> jackson_factors(int n_moments);

struct SpectralMetadata {
  double e_min = 0.0;
  double e_max = 0.0;
  int n_moments = 0;
  double epsilon = 0.0;
  double omega_delta_hz = 1.0;
  double runtime_seconds = 0.0;
  int lanczos_iterations = 0;
  double lanczos_residual = 0.0;
  double top_shell_weight = 0.0;
  double max_imag_residue = 0.0;
  /// Set for degenerate sectors: a single node whose density entry is the
  /// delta weight rather than a density.
  bool exact_delta = false;
};

struct SpectralResult {
  int k_index = 0;
  double k_value = 0.0;
  std::vector<double> scaled_nodes;  ///< xbar_j, ascending
  std::vector<double> energies;      ///< hbar omega_delta units, ascending
  std::vector<double> omega_hz;      ///< energies * omega_delta
  std::vector<double> density;       ///< A+ per Hz
  std::vector<double> density_per_phonon_energy;  ///< A+ per hbar omega_delta
  SpectralMetadata metadata;

  std::size_t size() const noexcept { return energies.size(); }

  /// Chebyshev-Gauss quadrature of the density over the nodes. Equals
  /// g_0 mu_0 = 1 up to rounding for every moment set with mu_0 = 1.
  double integrated_weight() const;
};

/// Damped Chebyshev sum on the N_C Chebyshev nodes via a type-III DCT,
/// converted back to physical frequency.
SpectralResult reconstruct(const MomentSeries& moments, std::span<const double> factors,
                           double omega_delta_hz = 1.0);

struct KpmOptions {
  int n_moments = 4096;
  double epsilon = 0.01;
  double lanczos_tol = 1e-9;
  int lanczos_max_iter = 3000;
};

/// assemble -> extremal_eigenvalues -> rescale -> bloch_start_vector ->
/// compute_moments -> jackson_factors -> reconstruct. Errors carry the stage.
SpectralResult spectral_function(const KSector& sector, const PhononBasis& basis,
                                 const EffectiveParams& params, const KpmOptions& options = {});

/// Same pipeline on an already assembled sector matrix.
SpectralResult spectral_function(const SparseHamiltonian& h, const PhononBasis& basis,
                                 const EffectiveParams& params, const KpmOptions& options = {});

}  // namespace polaron
