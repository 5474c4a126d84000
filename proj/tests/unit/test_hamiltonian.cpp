#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <polaron/error.hpp>
#include <polaron/hamiltonian.hpp>
#include <polaron/oracle.hpp>
#include <polaron/parallel.hpp>

#include "dense.hpp"
#include "reference.hpp"

using namespace polaron;

namespace {

StateVector random_state(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  StateVector v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

Complex inner(const StateVector& a, const StateVector& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

TEST_CASE("matrix elements") {
  const PhononBasis b(4, 3);
  const auto p = ref::lattice(4, 3, 1.3, 0.8);
  const double t = p.hopping_in_phonon_units();
  for (const KSector& s : all_sectors(b)) {
    const SparseHamiltonian h = assemble(s, b, p);
    CHECK(h.entry(0, 0).real() == doctest::Approx(-2 * t * std::cos(s.k_value())));
    CHECK(std::abs(h.entry(0, 0).imag()) < 1e-15);
    const Index e0 = b.rank(std::vector<int>{1, 0, 0, 0});
    CHECK(std::abs(h.entry(0, e0)) == doctest::Approx(1.3));
    const Index two = b.rank(std::vector<int>{2, 0, 0, 0});
    CHECK(std::abs(h.entry(e0, two)) == doctest::Approx(1.3 * std::sqrt(2.0)));
    CHECK(hermiticity_defect(h) == 0.0);
    for (Index i = 0; i < h.dim(); ++i) CHECK(h.row_offsets[i + 1] - h.row_offsets[i] <= 5);
    CHECK(h.top_shell_begin == b.count_up_to(2));
  }

  const auto frozen = make_effective(0.0, 0.0, 75e6, 4, 3);
  const SparseHamiltonian diag = assemble(make_sector(1, b), b, frozen);
  CHECK(diag.nnz() == diag.dim());
  for (Index i = 0; i < diag.dim(); ++i) {
    CHECK(diag.entry(i, i) == Complex{double(b.unrank(i).total()), 0.0});
  }
}

TEST_CASE("sparse matrix equals the projected real-space Hamiltonian") {
  for (auto [n, m] : {std::pair{2, 3}, {4, 2}, {4, 3}, {6, 2}}) {
    const PhononBasis b(n, m);
    const auto p = ref::lattice(n, m, 0.9, 0.6);
    for (const KSector& s : all_sectors(b)) {
      const SparseHamiltonian h = assemble(s, b, p);
      const auto dense = dense_sector_matrix(s, b, p);
      double err = 0.0;
      for (Index i = 0; i < s.dim; ++i)
        for (Index j = 0; j < s.dim; ++j)
          err = std::max(err, std::abs(dense[i * s.dim + j] - h.entry(i, j)));
      CHECK(err < 1e-13);
    }
  }
}

TEST_CASE("sector spectra reproduce the real-space spectrum") {
  for (auto [n, m] : {std::pair{2, 3}, {4, 3}}) {
    const PhononBasis b(n, m);
    const auto p = ref::lattice(n, m, 1.1, 1.0);
    std::vector<double> all;
    for (const KSector& s : all_sectors(b)) {
      const auto ev = ref::sector_eigenvalues(assemble(s, b, p));
      all.insert(all.end(), ev.begin(), ev.end());
    }
    std::sort(all.begin(), all.end());
    const auto full = real_space_spectrum(b, p);
    REQUIRE(full.size() == all.size());
    double err = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) err = std::max(err, std::abs(all[i] - full[i]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("reflection symmetry and variational bounds") {
  const PhononBasis b(6, 3);
  const double g = 1.4;
  const auto p = ref::lattice(6, 3, g, 0.5);
  const double t = p.hopping_in_phonon_units();
  for (int k = 1; k < 3; ++k) {
    const auto plus = ref::sector_eigenvalues(assemble(make_sector(k, b), b, p));
    const auto minus = ref::sector_eigenvalues(assemble(make_sector(-k, b), b, p));
    for (std::size_t i = 0; i < plus.size(); ++i) CHECK(std::abs(plus[i] - minus[i]) < 1e-12);
  }
  const double e0 = ref::sector_eigenvalues(assemble(make_sector(0, b), b, p)).front();
  CHECK(e0 <= -2 * t);
  CHECK(e0 >= -2 * t - g * g);
}

TEST_CASE("matvec") {
  const PhononBasis b(4, 3);
  const auto p = ref::lattice(4, 3, 0.0, 0.5);
  const double t = p.hopping_in_phonon_units();
  std::mt19937_64 rng(11);
  for (const KSector& s : all_sectors(b)) {
    const SparseHamiltonian h = assemble(s, b, p);
    StateVector zero(h.dim());
    for (const auto& z : matvec(h, zero)) CHECK(z == Complex{});
    const StateVector y = matvec(h, bloch_start_vector(s, b));
    CHECK(std::abs(y[0] - Complex{-2 * t * std::cos(s.k_value()), 0.0}) < 1e-14);
    for (Index i = 1; i < y.size(); ++i) CHECK(y[i] == Complex{});
  }

  const auto coupled = ref::lattice(4, 3, 1.2, 0.7);
  const SparseHamiltonian h = assemble(make_sector(1, b), b, coupled);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector x = random_state(h.dim(), rng);
    const StateVector z = random_state(h.dim(), rng);
    const Complex a = inner(x, matvec(h, z));
    const Complex c = inner(z, matvec(h, x));
    CHECK(std::abs(a - std::conj(c)) < 1e-10 * std::max(1.0, std::abs(a)));
  }
  StateVector wrong(h.dim() + 1);
  CHECK_THROWS_AS(matvec(h, wrong), DomainError);
}

TEST_CASE("matvec is independent of the thread count") {
  const PhononBasis b(6, 6);
  const auto p = ref::lattice(6, 6, 1.0, 1.0);
  const SparseHamiltonian h = assemble(make_sector(1, b), b, p);
  std::mt19937_64 rng(5);
  const StateVector x = random_state(h.dim(), rng);
  parallel::set_threads(1);
  const StateVector one = matvec(h, x);
  const double n1 = parallel::norm_squared(x);
  parallel::set_threads(3);
  const StateVector three = matvec(h, x);
  const double n3 = parallel::norm_squared(x);
  parallel::set_threads(1);
  CHECK(one == three);
  CHECK(n1 == n3);
  const SparseHamiltonian again = assemble(make_sector(1, b), b, p);
  CHECK(again.values == h.values);
  CHECK(again.column_indices == h.column_indices);
}

TEST_CASE("extremal eigenvalues") {
  {
    const PhononBasis b(4, 3);
    const SparseHamiltonian h = assemble(make_sector(0, b), b, make_effective(0.0, 0.0, 75e6, 4, 3));
    const SpectralBounds r = extremal_eigenvalues(h);
    CHECK(std::abs(r.e_min) < 1e-9);
    CHECK(std::abs(r.e_max - 3.0) < 1e-9);
  }
  {
    const PhononBasis b(4, 0);
    const auto p = ref::lattice(4, 0, 1.0, 0.5);
    const SparseHamiltonian h = assemble(make_sector(1, b), b, p);
    const SpectralBounds r = extremal_eigenvalues(h);
    CHECK(r.e_min == r.e_max);
    CHECK(std::abs(r.e_min + 2 * p.hopping_in_phonon_units() * std::cos(std::numbers::pi / 2)) < 1e-14);
  }
  {
    const PhononBasis b(4, 2);
    const auto p = ref::lattice(4, 2, 1.0, 1.0);
    for (const KSector& s : all_sectors(b)) {
      const SparseHamiltonian h = assemble(s, b, p);
      const auto ev = ref::sector_eigenvalues(h);
      const SpectralBounds r = extremal_eigenvalues(h);
      CHECK(std::abs(r.e_min - ev.front()) < 1e-8);
      CHECK(std::abs(r.e_max - ev.back()) < 1e-8);
      CHECK(r.residual <= 1e-9);
    }
  }
  {
    const PhononBasis b(6, 5);
    const auto p = ref::lattice(6, 5, 2.0, 1.0);
    const SparseHamiltonian h = assemble(make_sector(0, b), b, p);
    CHECK_THROWS_AS(extremal_eigenvalues(h, 1e-12, 3), ConvergenceError);
    try {
      extremal_eigenvalues(h, 1e-12, 3);
    } catch (const ConvergenceError& e) {
      CHECK(e.best_min() <= e.best_max());
      CHECK(e.kind() == ErrorKind::convergence);
    }
  }
}

TEST_CASE("assembly rejects mismatched inputs") {
  const PhononBasis b(4, 2);
  CHECK_THROWS_AS(assemble(make_sector(0, b), b, ref::lattice(4, 3, 1.0, 1.0)), DomainError);
  CHECK_THROWS_AS(assemble(make_sector(0, b), b, ref::lattice(6, 2, 1.0, 1.0)), DomainError);
}

TEST_CASE("binary dump round trip") {
  const PhononBasis b(4, 3);
  const auto p = ref::lattice(4, 3, 1.0, 1.0);
  const KSector s = make_sector(1, b);
  const SparseHamiltonian h = assemble(s, b, p);
  const auto path = std::filesystem::temp_directory_path() / "polaron_test_dump.bin";
  write_binary(h, path);
  CHECK(std::filesystem::file_size(path) ==
        16 + 8 * (h.dim() + 1) + 8 * h.nnz() + 16 * h.nnz());
  const SparseHamiltonian back = read_binary(path, s);
  CHECK(back.row_offsets == h.row_offsets);
  CHECK(back.column_indices == h.column_indices);
  CHECK(back.values == h.values);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_binary(path, s), IoError);
}
