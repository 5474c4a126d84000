#include "polaron/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polaron/error.hpp"

namespace polaron {

namespace {

void require_frequency(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string(name) + " must be finite and >= 0, got " +
                      std::to_string(value));
  }
}

}  // namespace

void CircuitParams::validate() const {
  require_frequency(g_over_2pi, "g_over_2pi");
  require_frequency(delta_over_2pi, "delta_over_2pi");
  require_frequency(xi_d_over_2pi, "xi_d_over_2pi");
  require_frequency(omega_delta_over_2pi, "omega_delta_over_2pi");
  if (delta_over_2pi <= 0.0) throw DomainError("delta_over_2pi must be > 0");
  if (ej0) require_frequency(*ej0, "ej0");
  if (!std::isfinite(zeta0_sq) || zeta0_sq <= 0.0) {
    throw DomainError("zeta0_sq must be finite and > 0");
  }
  if (flux_ratio && !std::isfinite(*flux_ratio)) {
    throw DomainError("flux_ratio must be finite");
  }
  for (const auto& opt : {omega_c_over_2pi, omega_z_over_2pi, omega_d_over_2pi}) {
    if (opt) require_frequency(*opt, "provenance frequency");
  }
}

double CircuitParams::dispersive_ratio() const {
  if (g_over_2pi == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(delta_over_2pi) / g_over_2pi;
}

double CircuitParams::drive_ratio() const {
  if (omega_delta_over_2pi == 0.0) return std::numeric_limits<double>::infinity();
  return xi_d_over_2pi / omega_delta_over_2pi;
}

double EffectiveParams::adiabaticity_ratio() const {
  if (t_e == 0.0) return std::numeric_limits<double>::infinity();
  return omega_delta / t_e;
}

double EffectiveParams::hopping_in_phonon_units() const { return t_e / omega_delta; }

void EffectiveParams::validate() const {
  if (!std::isfinite(t_e) || t_e < 0.0) throw DomainError("t_e must be finite and >= 0");
  if (!std::isfinite(g_h) || g_h < 0.0) throw DomainError("g_h must be finite and >= 0");
  if (!std::isfinite(omega_delta) || omega_delta <= 0.0) {
    throw DomainError("omega_delta must be finite and > 0");
  }
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw DomainError("n_sites must be even and >= 2, got " + std::to_string(n_sites));
  }
  if (max_phonons < 0) throw DomainError("max_phonons must be >= 0");
  if (t_e > 0.0) {
    const double expected = effective_coupling(g_h, omega_delta, t_e);
    if (std::abs(lambda_h - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
      throw DomainError("lambda_h inconsistent with g_h, omega_delta and t_e");
    }
  }
}

double stark_shift(const CircuitParams& circuit) {
  if (circuit.delta_over_2pi == 0.0) throw DomainError("stark_shift: zero detuning");
  return circuit.g_over_2pi * circuit.g_over_2pi / circuit.delta_over_2pi;
}

double hopping_amplitude(double ej0, double zeta0_sq, double flux_ratio) {
  if (!(ej0 >= 0.0)) throw DomainError("hopping_amplitude: ej0 must be >= 0");
  if (!(zeta0_sq > 0.0)) throw DomainError("hopping_amplitude: zeta0_sq must be > 0");
  // Reduce to [0, 2) first so exact zeros of the cosine stay exact.
  const double reduced = flux_ratio - 2.0 * std::floor(flux_ratio / 2.0);
  if (reduced == 0.5 || reduced == 1.5) return 0.0;
  return 2.0 * ej0 * zeta0_sq * std::cos(std::numbers::pi * reduced);
}

double dimensionless_coupling(const CircuitParams& circuit) {
  if (circuit.omega_delta_over_2pi == 0.0) {
    throw DomainError("dimensionless_coupling: omega_delta must be nonzero");
  }
  const double chi = stark_shift(circuit);
  return 2.0 * circuit.xi_d_over_2pi * chi /
         (circuit.omega_delta_over_2pi * circuit.omega_delta_over_2pi);
}

double effective_coupling(double g_h, double omega_delta, double t_e) {
  if (t_e == 0.0) {
    throw DomainError("effective_coupling: t_e == 0 is the atomic limit, lambda_H is infinite");
  }
  if (!(t_e > 0.0)) throw DomainError("effective_coupling: t_e must be > 0");
  return g_h * g_h * omega_delta / (2.0 * t_e);
}

EffectiveParams make_effective(double t_e, double g_h, double omega_delta, int n_sites,
                               int max_phonons) {
  EffectiveParams p;
  p.t_e = t_e;
  p.g_h = g_h;
  p.omega_delta = omega_delta;
  p.n_sites = n_sites;
  p.max_phonons = max_phonons;
  p.lambda_h = t_e > 0.0 ? effective_coupling(g_h, omega_delta, t_e)
                         : std::numeric_limits<double>::infinity();
  p.validate();
  return p;
}

EffectiveParams from_adiabaticity(double ratio, double omega_delta, double g_h, int n_sites,
                                  int max_phonons) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError("from_adiabaticity: ratio must be finite and > 0");
  }
  return make_effective(omega_delta / ratio, g_h, omega_delta, n_sites, max_phonons);
}

EffectiveParams from_circuit(const CircuitParams& circuit, int n_sites, int max_phonons) {
  circuit.validate();
  if (!circuit.ej0 || !circuit.flux_ratio) {
    throw DomainError("from_circuit: ej0 and flux_ratio are both required to derive t_e");
  }
  double t_e = hopping_amplitude(*circuit.ej0, circuit.zeta0_sq, *circuit.flux_ratio);
  if (t_e < 0.0) {
    // A negative hopping maps k -> k + pi; the spectrum at |t_e| is reported.
    t_e = -t_e;
  }
  auto p = make_effective(t_e, dimensionless_coupling(circuit), circuit.omega_delta_over_2pi,
                          n_sites, max_phonons);
  p.chi = stark_shift(circuit);
  return p;
}

bool small_polaron_regime(double g_h, double lambda_h) { return g_h > 1.0 && lambda_h > 1.0; }

RegimeReport describe_regime(const CircuitParams& circuit, const EffectiveParams& eff) {
  RegimeReport r;
  r.chi = stark_shift(circuit);
  r.g_h = eff.g_h;
  r.lambda_h = eff.lambda_h;
  r.adiabaticity_ratio = eff.adiabaticity_ratio();
  r.dispersive_ratio = circuit.dispersive_ratio();
  r.drive_ratio = circuit.drive_ratio();
  r.small_polaron = small_polaron_regime(eff.g_h, eff.lambda_h);
  r.adiabatic = r.adiabaticity_ratio < 1.0;
  return r;
}

}  // namespace polaron
