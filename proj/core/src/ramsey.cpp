#include "polaron/ramsey.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "dense_eigen.hpp"
#include "polaron/error.hpp"

namespace polaron {

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;  // index 0 = down, 1 = up

Mat2 pulse(double phi) {
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  // sigma^x cos(phi) - sigma^y sin(phi) in the (down, up) basis.
  const Complex up_from_down{std::cos(phi), std::sin(phi)};
  const Complex down_from_up{std::cos(phi), -std::sin(phi)};
  const Complex i{0.0, 1.0};
  return {{{Complex{c, 0.0}, i * s * down_from_up}, {i * s * up_from_down, Complex{c, 0.0}}}};
}

Mat2 rotated_sigma_z(double phi) {
  const Mat2 r = pulse(phi);
  const std::array<double, 2> z{-1.0, 1.0};
  Mat2 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) out[a][b] += std::conj(r[c][a]) * z[c] * r[c][b];
  return out;
}

bool same_angle(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double d = std::remainder(a - b, two_pi);
  return std::abs(d) < 1e-12;
}

}  // namespace

RamseySimulator::RamseySimulator(const PhononBasis& basis, const EffectiveParams& params)
    : n_sites_(basis.n_sites()),
      phonon_dim_(basis.size()),
      dim_(real_space_dim(basis)),
      angular_(2.0 * std::numbers::pi * params.omega_delta) {
  const std::vector<double> h = real_space_hamiltonian(basis, params);
  detail::symmetric_eigen(h, dim_, eigenvalues_, &eigenvectors_);
}

void RamseySimulator::check_sites(int n, int n_prime) const {
  if (n < 0 || n >= n_sites_ || n_prime < 0 || n_prime >= n_sites_) {
    throw DomainError("ramsey: site index out of range");
  }
}

Complex RamseySimulator::amplitude(int n, int n_prime, double t) const {
  check_sites(n, n_prime);
  const Index from = static_cast<Index>(n) * phonon_dim_;
  const Index to = static_cast<Index>(n_prime) * phonon_dim_;
  Complex sum{};
  for (Index j = 0; j < dim_; ++j) {
    const double* v = eigenvectors_.data() + j * dim_;
    sum += v[to] * v[from] * std::polar(1.0, -eigenvalues_[j] * angular_ * t);
  }
  return sum;
}

double RamseySimulator::measure(int n, int n_prime, double phi1, double phi2, double t) const {
  check_sites(n, n_prime);
  if (t < 0.0) throw DomainError("ramsey: evolution time must be >= 0");

  // First pulse on |down>: r0 |vacuum> + r1 |1_n, 0>.
  const Mat2 r = pulse(phi1);
  const Complex r0 = r[0][0];
  const Complex r1 = r[1][0];

  // psi(t) = U(t) |1_n, 0>, needed on the readout site for all phonon states.
  const Index from = static_cast<Index>(n) * phonon_dim_;
  const Index to = static_cast<Index>(n_prime) * phonon_dim_;
  std::vector<Complex> psi(phonon_dim_, Complex{});
  for (Index j = 0; j < dim_; ++j) {
    const double* v = eigenvectors_.data() + j * dim_;
    const Complex c = v[from] * std::polar(1.0, -eigenvalues_[j] * angular_ * t);
    for (Index p = 0; p < phonon_dim_; ++p) psi[p] += c * v[to + p];
  }
  double up_weight = 0.0;
  for (const Complex& z : psi) up_weight += std::norm(z);

  const double p_up = std::norm(r1) * up_weight;
  const double p_down = std::norm(r0) + std::norm(r1) * (1.0 - up_weight);
  // <psi| (|down><up|)_n' |psi> keeps only the vacuum overlap.
  const Complex lower = std::conj(r0) * r1 * psi[0];

  const Mat2 o = rotated_sigma_z(phi2);
  const double value =
      o[0][0].real() * p_down + o[1][1].real() * p_up + 2.0 * (o[0][1] * lower).real();
  return value;
}

RamseyOutcome RamseySimulator::measure(int n, int n_prime, double phi1, double phi2,
                                       std::span<const double> times) const {
  RamseyOutcome out;
  out.n = n;
  out.n_prime = n_prime;
  out.phi1 = phi1;
  out.phi2 = phi2;
  out.times.assign(times.begin(), times.end());
  out.measured.reserve(times.size());
  for (double t : times) out.measured.push_back(measure(n, n_prime, phi1, phi2, t));
  return out;
}

std::vector<RamseyOutcome> ramsey_dataset(const RamseySimulator& sim, int n,
                                          std::span<const double> times, double phi2) {
  std::vector<RamseyOutcome> out;
  const double half_pi = 0.5 * std::numbers::pi;
  for (int target = 0; target < sim.n_sites(); ++target) {
    for (double delta : {0.0, half_pi, -half_pi}) {
      out.push_back(sim.measure(n, target, phi2 + delta, phi2, times));
    }
  }
  return out;
}

GreensSeries ramsey_reconstruct_greens(std::span<const RamseyOutcome> outcomes, int k_index,
                                       int n_sites) {
  if (outcomes.empty()) throw DomainError("ramsey_reconstruct_greens: no outcomes");
  if (n_sites < 1) throw DomainError("ramsey_reconstruct_greens: n_sites must be >= 1");
  const int source = outcomes.front().n;
  const std::vector<double>& times = outcomes.front().times;
  const double half_pi = 0.5 * std::numbers::pi;

  // quad[target][q]: q = 0 for delta 0, 1 for +pi/2, 2 for -pi/2.
  std::vector<std::array<const RamseyOutcome*, 3>> quad(n_sites, {nullptr, nullptr, nullptr});
  for (const RamseyOutcome& o : outcomes) {
    if (o.n != source) throw DomainError("ramsey_reconstruct_greens: mixed source sites");
    if (o.times != times) throw DomainError("ramsey_reconstruct_greens: time grids differ");
    if (o.measured.size() != times.size()) {
      throw DomainError("ramsey_reconstruct_greens: outcome length does not match its time grid");
    }
    if (o.n_prime < 0 || o.n_prime >= n_sites) {
      throw DomainError("ramsey_reconstruct_greens: readout site out of range");
    }
    const double delta = o.phi1 - o.phi2;
    std::optional<int> slot;
    if (same_angle(delta, 0.0)) slot = 0;
    else if (same_angle(delta, half_pi)) slot = 1;
    else if (same_angle(delta, -half_pi)) slot = 2;
    if (slot) quad[o.n_prime][*slot] = &o;
  }
  for (int target = 0; target < n_sites; ++target) {
    for (const RamseyOutcome* o : quad[target]) {
      if (o == nullptr) {
        throw DomainError("ramsey_reconstruct_greens: missing quadrature for readout site " +
                          std::to_string(target));
      }
    }
  }

  GreensSeries out;
  out.k_index = k_index;
  out.k_value = 2.0 * std::numbers::pi * k_index / n_sites;
  out.times = times;
  out.values.assign(times.size(), Complex{});
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) continue;
    Complex sum{};
    for (int target = 0; target < n_sites; ++target) {
      const auto& q = quad[target];
      const Complex a{q[0]->measured[i], 0.5 * (q[2]->measured[i] - q[1]->measured[i])};
      const int d = ((target - source) % n_sites + n_sites) % n_sites;
      sum += std::polar(1.0, -out.k_value * d) * a;
    }
    out.values[i] = Complex{0.0, -1.0} * sum;
  }
  return out;
}

}  // namespace polaron
