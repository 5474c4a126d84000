#include <doctest.h>

#include <cmath>
#include <limits>

#include <polaron/error.hpp>
#include <polaron/params.hpp>

using namespace polaron;

namespace {

CircuitParams reference_circuit() {
  CircuitParams c;
  c.g_over_2pi = 250e6;
  c.delta_over_2pi = 5e9;
  c.xi_d_over_2pi = 600e6;
  c.omega_delta_over_2pi = 75e6;
  return c;
}

}  // namespace

TEST_CASE("stark shift") {
  CircuitParams c = reference_circuit();
  CHECK(stark_shift(c) == doctest::Approx(12.5e6).epsilon(1e-15));
  c.g_over_2pi = 0.0;
  CHECK(stark_shift(c) == 0.0);
  c.g_over_2pi = 1e9;
  c.delta_over_2pi = 1e9;
  CHECK(stark_shift(c) == doctest::Approx(1e9));
  c.delta_over_2pi = 0.0;
  CHECK_THROWS_AS(stark_shift(c), DomainError);
}

TEST_CASE("hopping amplitude") {
  const double ej = 20e9, z = 0.15;
  CHECK(hopping_amplitude(ej, z, 0.0) == doctest::Approx(2 * ej * z));
  CHECK(hopping_amplitude(ej, z, 0.5) == 0.0);
  CHECK(hopping_amplitude(ej, z, 1.0 / 3.0) == doctest::Approx(ej * z));
  CHECK(hopping_amplitude(ej, z, 1.0) < 0.0);
  for (double f : {0.1, 0.37, 0.8, 1.3}) {
    CHECK(hopping_amplitude(ej, z, f) == doctest::Approx(hopping_amplitude(ej, z, f + 2.0)));
    CHECK(hopping_amplitude(ej, z, f) == doctest::Approx(hopping_amplitude(ej, z, -f)));
  }
  CHECK_THROWS_AS(hopping_amplitude(-1.0, z, 0.0), DomainError);
  CHECK_THROWS_AS(hopping_amplitude(ej, 0.0, 0.0), DomainError);
}

TEST_CASE("dimensionless coupling") {
  CircuitParams c = reference_circuit();
  CHECK(dimensionless_coupling(c) == doctest::Approx(2.6667).epsilon(1e-4));
  CHECK(std::abs(dimensionless_coupling(c) - 2.667) < 1e-3);
  c.omega_delta_over_2pi = 150e6;
  CHECK(dimensionless_coupling(c) == doctest::Approx(2.6667 / 4).epsilon(1e-4));
  c.xi_d_over_2pi = 0.0;
  CHECK(dimensionless_coupling(c) == 0.0);
  c.omega_delta_over_2pi = 0.0;
  CHECK_THROWS_AS(dimensionless_coupling(c), DomainError);
}

TEST_CASE("effective coupling and adiabaticity") {
  const double g = dimensionless_coupling(reference_circuit());
  CHECK(std::abs(effective_coupling(g, 75e6, 600e6) - 0.444) < 1e-3);
  CHECK(std::abs(effective_coupling(g, 75e6, 37.5e6) - 7.111) < 1e-3);
  CHECK(effective_coupling(0.0, 75e6, 600e6) == 0.0);
  CHECK_THROWS_AS(effective_coupling(g, 75e6, 0.0), DomainError);

  CHECK(from_adiabaticity(0.125, 75e6, g).t_e == doctest::Approx(600e6));
  CHECK(from_adiabaticity(1.0, 75e6, g).t_e == doctest::Approx(75e6));
  CHECK(from_adiabaticity(2.0, 75e6, g).t_e == doctest::Approx(37.5e6));
  CHECK_THROWS_AS(from_adiabaticity(0.0, 75e6, g), DomainError);
  CHECK_THROWS_AS(from_adiabaticity(-1.0, 75e6, g), DomainError);

  for (double ratio : {0.01, 0.125, 0.7, 3.0, 40.0}) {
    const EffectiveParams p = from_adiabaticity(ratio, 75e6, g, 4, 3);
    CHECK(std::abs(p.lambda_h * 2 * p.t_e - g * g * p.omega_delta) <=
          1e-12 * g * g * p.omega_delta);
  }
}

TEST_CASE("small polaron flag flips near ratio 0.28") {
  const double g = dimensionless_coupling(reference_circuit());
  const EffectiveParams below = from_adiabaticity(0.27, 75e6, g);
  const EffectiveParams above = from_adiabaticity(0.29, 75e6, g);
  CHECK(below.lambda_h < 1.0);
  CHECK(above.lambda_h > 1.0);
  CHECK_FALSE(small_polaron_regime(below.g_h, below.lambda_h));
  CHECK(small_polaron_regime(above.g_h, above.lambda_h));
  CHECK_FALSE(small_polaron_regime(0.9, 5.0));
}

TEST_CASE("effective parameter validation") {
  CHECK_THROWS_AS(make_effective(1.0, 1.0, 1.0, 3, 0), DomainError);
  CHECK_THROWS_AS(make_effective(1.0, 1.0, 1.0, 0, 0), DomainError);
  CHECK_THROWS_AS(make_effective(1.0, 1.0, 1.0, 2, -1), DomainError);
  CHECK_THROWS_AS(make_effective(-1.0, 1.0, 1.0, 2, 0), DomainError);
  CHECK_THROWS_AS(make_effective(1.0, 1.0, 0.0, 2, 0), DomainError);
  const EffectiveParams atomic = make_effective(0.0, 2.0, 75e6, 2, 4);
  CHECK(std::isinf(atomic.lambda_h));
  EffectiveParams p = make_effective(10e6, 1.0, 75e6, 2, 4);
  p.lambda_h *= 1.001;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("circuit mapping") {
  CircuitParams c = reference_circuit();
  CHECK_THROWS_AS(from_circuit(c, 4, 2), DomainError);
  c.ej0 = 2e9;
  c.flux_ratio = 0.0;
  const EffectiveParams p = from_circuit(c, 4, 2);
  CHECK(p.t_e == doctest::Approx(2 * 2e9 * 0.15));
  REQUIRE(p.chi.has_value());
  CHECK(*p.chi == doctest::Approx(12.5e6));
  c.flux_ratio = 1.0;
  CHECK(from_circuit(c, 4, 2).t_e == doctest::Approx(2 * 2e9 * 0.15));

  const RegimeReport r = describe_regime(c, p);
  CHECK(r.dispersive_ratio == doctest::Approx(20.0));
  CHECK(r.drive_ratio == doctest::Approx(8.0));
  CHECK(r.adiabatic);

  c.g_over_2pi = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = reference_circuit();
  c.omega_c_over_2pi = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(c.validate(), DomainError);
}
