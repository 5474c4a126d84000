#pragma once

#include <optional>

// Circuit-QED to Holstein parameter mapping.
//
// Every user-facing frequency is a linear frequency nu = omega / 2pi in Hz,
// and energies are quoted the same way (E / 2pi hbar). In this convention
// hbar and 2pi drop out of every formula below. The Hamiltonian itself works
// in units of hbar * omega_delta.

namespace polaron {

/// Physical knobs of the transmon/resonator array (all frequencies in Hz).
struct CircuitParams {
  double g_over_2pi = 0.0;            ///< qubit-resonator coupling g
  double delta_over_2pi = 0.0;        ///< detuning Delta = omega_c - omega_z
  double xi_d_over_2pi = 0.0;         ///< resonator drive amplitude xi_d
  double omega_delta_over_2pi = 0.0;  ///< modified resonator/drive detuning

  std::optional<double> ej0;           ///< SQUID junction energy E_J^0 (Hz)
  double zeta0_sq = 0.15;              ///< sqrt(2 E_C / E_J)
  std::optional<double> flux_ratio;    ///< Phi_S / Phi_0

  // Provenance only; they drop out of the effective model.
  std::optional<double> omega_c_over_2pi;
  std::optional<double> omega_z_over_2pi;
  std::optional<double> omega_d_over_2pi;

  /// Throws DomainError on negative or non-finite frequencies or Delta <= 0.
  void validate() const;

  /// |Delta| / g; the dispersive regime needs this to be large.
  double dispersive_ratio() const;

  /// xi_d / omega_delta; recorded, not enforced.
  double drive_ratio() const;
};

/// Holstein model parameters plus the lattice/truncation size.
struct EffectiveParams {
  double t_e = 0.0;          ///< hopping amplitude (Hz)
  double g_h = 0.0;          ///< dimensionless local coupling
  double lambda_h = 0.0;     ///< g_h^2 omega_delta / (2 t_e); +inf when t_e == 0
  double omega_delta = 0.0;  ///< phonon frequency (Hz)
  std::optional<double> chi; ///< Stark shift (Hz) when derived from a circuit
  int n_sites = 2;
  int max_phonons = 0;

  /// hbar omega_delta / t_e.
  double adiabaticity_ratio() const;

  /// t_e in units of hbar omega_delta, as used by the Hamiltonian.
  double hopping_in_phonon_units() const;

  /// Checks the invariants: t_e >= 0, g_h >= 0, omega_delta > 0, n_sites even
  /// and >= 2, max_phonons >= 0, lambda_h consistent with the other fields.
  void validate() const;
};

/// chi = g^2 / Delta.
double stark_shift(const CircuitParams& circuit);

/// t_e = 2 E_J^0 zeta0^2 cos(pi Phi_S / Phi_0). Negative values are returned
/// as is; the caller decides how to treat a sign flip of the hopping.
double hopping_amplitude(double ej0, double zeta0_sq, double flux_ratio);

/// g_H = 2 xi_d chi / omega_delta^2.
double dimensionless_coupling(const CircuitParams& circuit);

/// lambda_H = g_H^2 omega_delta / (2 t_e).
double effective_coupling(double g_h, double omega_delta, double t_e);

/// Effective parameters at a given adiabaticity ratio omega_delta / t_e.
EffectiveParams from_adiabaticity(double ratio, double omega_delta, double g_h,
                                  int n_sites = 2, int max_phonons = 0);

/// Builds effective parameters from explicit t_e (lambda_h = inf at t_e == 0).
EffectiveParams make_effective(double t_e, double g_h, double omega_delta,
                               int n_sites = 2, int max_phonons = 0);

/// Maps a full circuit description; requires ej0 and flux_ratio.
EffectiveParams from_circuit(const CircuitParams& circuit, int n_sites,
                             int max_phonons);

/// Small-polaron criterion: g_H > 1 and lambda_H > 1.
bool small_polaron_regime(double g_h, double lambda_h);

struct RegimeReport {
  double chi = 0.0;
  double g_h = 0.0;
  double lambda_h = 0.0;
  double adiabaticity_ratio = 0.0;
  double dispersive_ratio = 0.0;
  double drive_ratio = 0.0;
  bool small_polaron = false;
  bool adiabatic = false;  ///< omega_delta / t_e < 1
};

RegimeReport describe_regime(const CircuitParams& circuit, const EffectiveParams& eff);

}  // namespace polaron
