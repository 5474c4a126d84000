#include "presets.hpp"

#include <polaron/error.hpp>

namespace polaron::app {

namespace {

// Circuit values of the reference device: g/2pi = 250 MHz, Delta/2pi = 5 GHz,
// xi_d/2pi = 600 MHz, omega_delta/2pi = 75 MHz.
#define POLARON_REFERENCE_CIRCUIT \
  "[circuit]\n"                   \
  "g = 250e6\n"                   \
  "delta = 5e9\n"                 \
  "xi_d = 600e6\n"                \
  "omega_delta = 75e6\n"

constexpr Preset kPresets[] = {
    {"reference-params", "chi, g_H and lambda_H of the reference device at five hopping values",
     POLARON_REFERENCE_CIRCUIT
     "[model]\n"
     "t_e = 600e6, 300e6, 150e6, 75e6, 37.5e6\n"
     "[run]\n"
     "mode = params\n"},
    {"desk-spectrum", "KPM spectrum, N=6, M=8, ratio 1, all k (seconds)",
     POLARON_REFERENCE_CIRCUIT
     "[model]\n"
     "ratio = 1\n"
     "n_sites = 6\n"
     "max_phonons = 8\n"
     "[kpm]\n"
     "n_moments = 4096\n"
     "[run]\n"
     "mode = spectrum\n"},
    {"desk-sweep", "adiabaticity sweep 0.125 ... 2, N=6, M=8, positive k (about a minute)",
     POLARON_REFERENCE_CIRCUIT
     "[model]\n"
     "n_sites = 6\n"
     "max_phonons = 8\n"
     "[kpm]\n"
     "n_moments = 4096\n"
     "[run]\n"
     "mode = sweep\n"
     "k = 0, 1, 2, 3\n"},
    {"oracle-small", "dense eigenpairs and weights, N=4, M=4, g_H=1, ratio 1",
     "[model]\n"
     "g_h = 1\n"
     "omega_delta = 75e6\n"
     "ratio = 1\n"
     "n_sites = 4\n"
     "max_phonons = 4\n"
     "[run]\n"
     "mode = oracle\n"},
    {"ramsey-small", "simulated Ramsey protocol, N=4, M=2, g_H=1, ratio 1",
     "[model]\n"
     "g_h = 1\n"
     "omega_delta = 75e6\n"
     "ratio = 1\n"
     "n_sites = 4\n"
     "max_phonons = 2\n"
     "[run]\n"
     "mode = ramsey\n"},
    {"workstation-sweep",
     "workstation-scale: N=10, M=18, N_C=80000, full sweep, sectors of 13 million states "
     "(days of CPU time)",
     POLARON_REFERENCE_CIRCUIT
     "[model]\n"
     "n_sites = 10\n"
     "max_phonons = 18\n"
     "[kpm]\n"
     "n_moments = 80000\n"
     "[run]\n"
     "mode = sweep\n"
     "k = 0, 1, 2, 3, 4, 5\n"
     "max_sector_dim = 0\n"},
};

#undef POLARON_REFERENCE_CIRCUIT

}  // namespace

std::span<const Preset> presets() noexcept { return kPresets; }

KeyValues preset_values(std::string_view name) {
  std::string known;
  for (const Preset& p : kPresets) {
    if (p.name == name) return parse_ini(p.text, "preset " + std::string(name));
    known += (known.empty() ? "" : ", ") + std::string(p.name);
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace polaron::app
