#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <polaron/error.hpp>
#include <polaron/oracle.hpp>
#include <polaron/ramsey.hpp>

#include "reference.hpp"

using namespace polaron;

namespace {

std::vector<double> grid(int n, double dt) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = i * dt;
  return t;
}

}  // namespace

TEST_CASE("readout bounds and phase dependence") {
  const PhononBasis basis(4, 2);
  const RamseySimulator sim(basis, ref::lattice(4, 2, 1.3, 1.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> time(0.0, 2e-7);
  for (int i = 0; i < 200; ++i) {
    const int n = rng() % 4, np = rng() % 4;
    const double p1 = phase(rng), p2 = phase(rng), t = time(rng), shift = phase(rng);
    const double m = sim.measure(n, np, p1, p2, t);
    CHECK(std::abs(m) <= 1.0 + 1e-12);
    CHECK(std::abs(m - sim.measure(n, np, p1 + shift, p2 + shift, t)) < 1e-12);
    const Complex a = sim.amplitude(n, np, t);
    CHECK(std::abs(m - std::real(std::exp(Complex{0.0, p1 - p2}) * a)) < 1e-12);
  }
  for (int n = 0; n < 4; ++n) CHECK(sim.measure(n, n, 0.3, 0.3, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sim.measure(0, 1, 0.0, 0.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(sim.measure(0, 4, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("reconstruction matches exact evolution") {
  const PhononBasis basis(4, 2);
  const auto p = ref::lattice(4, 2, 1.0, 1.0);
  const RamseySimulator sim(basis, p);
  const auto times = grid(50, 1.0 / (10 * p.omega_delta));
  const auto data = ramsey_dataset(sim, 0, times);
  CHECK(data.size() == 12);
  for (const KSector& s : all_sectors(basis)) {
    const GreensSeries r = ramsey_reconstruct_greens(data, s.k_index, 4);
    const GreensSeries e = evolve_greens(s, basis, p, times);
    CHECK(r.k_index == s.k_index);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(r.values[i] - e.values[i]) < 1e-10);
  }
  // Reflection symmetry makes k and -k indistinguishable.
  const GreensSeries plus = ramsey_reconstruct_greens(data, 1, 4);
  const GreensSeries minus = ramsey_reconstruct_greens(data, -1, 4);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(plus.values[i] - minus.values[i]) < 1e-12);
}

TEST_CASE("reconstruction input checks") {
  const PhononBasis basis(4, 1);
  const RamseySimulator sim(basis, ref::lattice(4, 1, 1.0, 1.0));
  const auto times = grid(5, 1e-9);
  auto data = ramsey_dataset(sim, 0, times);

  auto missing = data;
  missing.pop_back();
  CHECK_THROWS_AS(ramsey_reconstruct_greens(missing, 0, 4), DomainError);

  auto mixed = data;
  mixed.push_back(sim.measure(1, 1, 0.0, 0.0, times));
  CHECK_THROWS_AS(ramsey_reconstruct_greens(mixed, 0, 4), DomainError);

  auto regrid = data;
  regrid[0] = sim.measure(regrid[0].n, regrid[0].n_prime, regrid[0].phi1, regrid[0].phi2, grid(5, 2e-9));
  CHECK_THROWS_AS(ramsey_reconstruct_greens(regrid, 0, 4), DomainError);
}

TEST_CASE("zero coupling is a free phase") {
  const PhononBasis basis(4, 1);
  const auto p = ref::lattice(4, 1, 0.0, 0.7);
  const RamseySimulator sim(basis, p);
  const auto times = grid(30, 1.0 / (7 * p.omega_delta));
  const auto data = ramsey_dataset(sim, 2, times);
  const double t_e = p.hopping_in_phonon_units();
  for (const KSector& s : all_sectors(basis)) {
    const GreensSeries g = ramsey_reconstruct_greens(data, s.k_index, 4);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double phase = 2 * t_e * std::cos(s.k_value()) * 2 * std::numbers::pi * p.omega_delta * times[i];
      CHECK(std::abs(g.values[i] - Complex{0.0, -1.0} * std::polar(1.0, phase)) < 1e-10);
    }
  }
}
