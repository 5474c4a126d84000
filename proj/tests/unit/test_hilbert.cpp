#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <polaron/error.hpp>
#include <polaron/hilbert.hpp>

#include "reference.hpp"

using namespace polaron;

TEST_CASE("basis sizes") {
  CHECK(PhononBasis(1, 0).size() == 1);
  CHECK(PhononBasis(2, 2).size() == 6);
  CHECK(PhononBasis(3, 3).size() == 20);
  CHECK(PhononBasis(10, 18).size() == ref::binomial(28, 10));
  CHECK(PhononBasis(10, 18).size() == 13123110u);
  CHECK(PhononBasis(10, 8).size() == 43758u);
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      const PhononBasis b(n, m);
      CHECK(b.size() == ref::binomial(n + m, n));
      for (int s = 0; s <= m; ++s) CHECK(b.count_up_to(s) == ref::binomial(n + s, n));
    }
  }
  CHECK_THROWS_AS(PhononBasis(0, 1), DomainError);
  CHECK_THROWS_AS(PhononBasis(2, -1), DomainError);
  CHECK_THROWS_AS(PhononBasis(60, 4000), CapacityError);
}

TEST_CASE("ordering matches brute-force enumeration") {
  const PhononBasis b22(2, 2);
  const std::vector<std::vector<int>> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (Index i = 0; i < b22.size(); ++i) CHECK(b22.unrank(i).occupations == expected[i]);

  for (auto [n, m] : {std::pair{1, 5}, {3, 3}, {4, 4}, {5, 2}}) {
    const PhononBasis b(n, m);
    const auto configs = ref::enumerate_configs(n, m);
    REQUIRE(configs.size() == b.size());
    for (Index i = 0; i < b.size(); ++i) {
      CHECK(b.unrank(i).occupations == configs[i]);
      CHECK(b.rank(configs[i]) == i);
    }
  }
}

TEST_CASE("rank and unrank are inverse") {
  const PhononBasis b(3, 3);
  CHECK(b.rank(std::vector<int>{0, 0, 0}) == 0);
  for (Index i = 0; i < b.size(); ++i) CHECK(b.rank(b.unrank(i)) == i);
  CHECK_THROWS_AS(b.rank(std::vector<int>{2, 1, 1}), DomainError);
  CHECK_THROWS_AS(b.rank(std::vector<int>{-1, 0, 0}), DomainError);
  CHECK_THROWS_AS(b.rank(std::vector<int>{0, 0}), DomainError);
  CHECK_FALSE(b.contains(std::vector<int>{4, 0, 0}));

  const PhononBasis big(10, 18);
  for (Index i : {Index{0}, Index{1}, Index{12345}, Index{9999999}, big.size() - 1}) {
    CHECK(big.rank(big.unrank(i)) == i);
  }
}

TEST_CASE("next walks the ordering") {
  const PhononBasis b(4, 3);
  std::vector<int> cur(4, 0);
  Index steps = 0;
  do {
    CHECK(b.rank(cur) == steps);
    ++steps;
  } while (b.next(cur));
  CHECK(steps == b.size());
  CHECK(cur == b.unrank(b.size() - 1).occupations);
}

TEST_CASE("translation") {
  const PhononConfig m{{3, 0, 1, 0}};
  CHECK(translate_config(m, 0) == m);
  CHECK(translate_config(m, 1).occupations == std::vector<int>{0, 3, 0, 1});
  PhononConfig cur = m;
  for (int i = 0; i < 4; ++i) cur = translate_config(cur, 1);
  CHECK(cur == m);
  CHECK(translate_config(translate_config(m, 1), -1) == m);
  CHECK(translate_config(m, 3).total() == m.total());

  // Entrywise: out[l] = m[N - n + l] for l < n, m[l - n] otherwise.
  const PhononConfig w{{5, 1, 0, 2, 7, 3}};
  for (int n = 0; n < 6; ++n) {
    const PhononConfig t = translate_config(w, n);
    for (int l = 0; l < 6; ++l) {
      const int s = l < n ? 6 - n + l : l - n;
      CHECK(t.occupations[l] == w.occupations[s]);
    }
  }
}

TEST_CASE("momentum sectors") {
  const PhononBasis b(4, 2);
  const auto sectors = all_sectors(b);
  REQUIRE(sectors.size() == 4);
  Index total = 0;
  for (const KSector& s : sectors) {
    CHECK(s.dim == b.size());
    CHECK(s.k_value() > -std::numbers::pi);
    CHECK(s.k_value() <= std::numbers::pi);
    total += s.dim;
  }
  CHECK(total == 4 * b.size());
  CHECK(sectors.front().k_index == -1);
  CHECK(sectors.back().k_index == 2);
  CHECK(make_sector(2, b).k_value() == doctest::Approx(std::numbers::pi));
  CHECK(make_sector(1, b).bloch_phase() == Complex{0.0, 1.0});
  CHECK(make_sector(2, b).bloch_phase() == Complex{-1.0, 0.0});
  CHECK_THROWS_AS(make_sector(3, b), DomainError);
  CHECK_THROWS_AS(make_sector(-2, b), DomainError);
  CHECK_THROWS_AS(make_sector(0, PhononBasis(3, 1)), DomainError);

  const PhononBasis b10(10, 1);
  for (const KSector& s : all_sectors(b10)) {
    const double q = s.k_value() / (std::numbers::pi / 5);
    CHECK(std::abs(q - std::round(q)) < 1e-12);
  }
}

TEST_CASE("Bloch start vector and explicit symmetry-adapted states") {
  const int n = 4;
  const PhononBasis b(n, 2);
  const Index d = b.size();
  for (const KSector& s : all_sectors(b)) {
    const StateVector v = bloch_start_vector(s, b);
    REQUIRE(v.size() == d);
    double norm = 0.0;
    for (const Complex& z : v) norm += std::norm(z);
    CHECK(norm == doctest::Approx(1.0));
    CHECK(v[0] == Complex{1.0, 0.0});

    // |K,m> = N^{-1/2} sum_site exp(iK site) |site, T_site m> in the full space.
    auto explicit_state = [&](Index r) {
      std::vector<Complex> out(n * d, Complex{});
      const PhononConfig m = b.unrank(r);
      for (int site = 0; site < n; ++site) {
        const Index idx = site * d + b.rank(translate_config(m, site));
        out[idx] += std::polar(1.0, s.k_value() * site) / std::sqrt(double(n));
      }
      return out;
    };
    // c_k^dagger |0> = N^{-1/2} sum_site exp(ik site) |site> (x) |0>.
    std::vector<Complex> bloch(n * d, Complex{});
    for (int site = 0; site < n; ++site) {
      bloch[site * d] = std::polar(1.0, s.k_value() * site) / std::sqrt(double(n));
    }
    const auto s0 = explicit_state(0);
    Complex overlap{};
    for (Index i = 0; i < n * d; ++i) overlap += std::conj(bloch[i]) * s0[i];
    CHECK(std::abs(overlap - Complex{1.0, 0.0}) < 1e-14);

    for (Index a = 0; a < d; ++a) {
      const auto va = explicit_state(a);
      for (Index c = a; c < d; ++c) {
        const auto vc = explicit_state(c);
        Complex ip{};
        for (Index i = 0; i < n * d; ++i) ip += std::conj(va[i]) * vc[i];
        CHECK(std::abs(ip - (a == c ? Complex{1.0, 0.0} : Complex{})) < 1e-14);
      }
    }
  }
}
