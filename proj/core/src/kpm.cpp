#include "polaron/kpm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

namespace polaron {

namespace {

// The FFTW planner is not reentrant; plan execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void require_dim(const RescaledOperator& op, std::size_t a, std::size_t b) {
  if (a != op.dim() || b != op.dim()) throw DomainError("rescaled operator: dimension mismatch");
}

void check_moment(double mu, int r) {
  if (!std::isfinite(mu)) {
    throw NumericalError("moment " + std::to_string(r) + " is not finite");
  }
  if (std::abs(mu) > 1.0 + 1e-8) {
    throw NumericalError("moment " + std::to_string(r) + " = " + std::to_string(mu) +
                         " leaves [-1, 1]; the spectral bounds do not enclose the spectrum");
  }
}

}  // namespace

void RescaledOperator::apply(std::span<const Complex> x, std::span<Complex> y) const {
  require_dim(*this, x.size(), y.size());
  const std::uint64_t* offsets = h_->row_offsets.data();
  const std::uint32_t* cols = h_->column_indices.data();
  const Complex* vals = h_->values.data();
  const double a = map_.scale, b = map_.shift;
  const auto n = static_cast<long long>(dim());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    Complex sum{0.0, 0.0};
    for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) sum += vals[e] * x[cols[e]];
    const auto k = static_cast<std::size_t>(i);
    y[k] = a * (sum - b * x[k]);
  }
}

void RescaledOperator::chebyshev_step(std::span<const Complex> cur, std::span<const Complex> prev,
                                      std::span<Complex> out) const {
  require_dim(*this, cur.size(), prev.size());
  require_dim(*this, out.size(), out.size());
  const std::uint64_t* offsets = h_->row_offsets.data();
  const std::uint32_t* cols = h_->column_indices.data();
  const Complex* vals = h_->values.data();
  const double two_a = 2.0 * map_.scale, b = map_.shift;
  const auto n = static_cast<long long>(dim());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    Complex sum{0.0, 0.0};
    for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) sum += vals[e] * cur[cols[e]];
    const auto k = static_cast<std::size_t>(i);
    out[k] = two_a * (sum - b * cur[k]) - prev[k];
  }
}

RescaledOperator rescale(const SparseHamiltonian& h, const SpectralBounds& bounds,
                         double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("rescale: epsilon must lie in (0, 1)");
  if (!(bounds.e_max > bounds.e_min)) {
    throw DomainError("rescale: degenerate spectrum (e_max <= e_min)");
  }
  ChebyshevScale map;
  map.epsilon = epsilon;
  map.e_min = bounds.e_min;
  map.e_max = bounds.e_max;
  map.scale = 2.0 * (1.0 - epsilon) / (bounds.e_max - bounds.e_min);
  map.shift = 0.5 * (bounds.e_max + bounds.e_min);
  return RescaledOperator(h, map);
}

MomentSeries compute_moments(const RescaledOperator& op, std::span<const Complex> start,
                             int n_moments) {
  if (n_moments < 2 || n_moments % 2 != 0) {
    throw DomainError("compute_moments: n_moments must be even and >= 2");
  }
  if (start.size() != op.dim()) throw DomainError("compute_moments: start vector dimension");
  const double mu0 = parallel::norm_squared(start);
  if (std::abs(mu0 - 1.0) > 1e-10) throw DomainError("compute_moments: start vector not normalized");

  MomentSeries series;
  series.k_index = op.underlying().sector.k_index;
  series.map = op.map();
  series.moments.assign(static_cast<std::size_t>(n_moments), 0.0);
  auto& mu = series.moments;

  // The three recurrence vectors: alpha^{(r-1)}, alpha^{(r)}, alpha^{(r+1)}.
  StateVector prev(start.begin(), start.end());
  StateVector cur(op.dim());
  StateVector next(op.dim());

  op.apply(prev, cur);
  const Complex mu1c = parallel::dot(cur, prev);
  series.max_imag_residue = std::abs(mu1c.imag());
  mu[0] = mu0;
  mu[1] = mu1c.real();
  check_moment(mu[1], 1);

  const int half = n_moments / 2;
  for (int r = 1; r < half; ++r) {
    op.chebyshev_step(cur, prev, next);
    const double cur_norm = parallel::norm_squared(cur);
    const Complex cross = parallel::dot(next, cur);
    series.max_imag_residue = std::max(series.max_imag_residue, std::abs(cross.imag()));
    mu[2 * r] = 2.0 * cur_norm - mu[0];
    mu[2 * r + 1] = 2.0 * cross.real() - mu[1];
    check_moment(mu[2 * r], 2 * r);
    check_moment(mu[2 * r + 1], 2 * r + 1);
    std::swap(prev, cur);  // prev <- alpha^{(r)}
    std::swap(cur, next);  // cur  <- alpha^{(r+1)}
  }
  if (series.max_imag_residue > 1e-10) {
    throw NumericalError("compute_moments: imaginary residue " +
                         std::to_string(series.max_imag_residue) + " exceeds 1e-10");
  }
  return series;
}

std::vector<double> jackson_factors(int n_moments) {
  if (n_moments < 1) throw DomainError("jackson_factors: n_moments must be >= 1");
  const double np1 = n_moments + 1.0;
  const double step = std::numbers::pi / np1;
  const double cot = std::cos(step) / std::sin(step);
  std::vector<double> g(static_cast<std::size_t>(n_moments));
  for (int r = 0; r < n_moments; ++r) {
    g[static_cast<std::size_t>(r)] =
        ((np1 - r) * std::cos(r * step) + std::sin(r * step) * cot) / np1;
  }
  return g;
}

double SpectralResult::integrated_weight() const {
  if (metadata.exact_delta) {
    double w = 0.0;
    for (double d : density) w += d;
    return w;
  }
  const double n = static_cast<double>(size());
  const double a = 2.0 * (1.0 - metadata.epsilon) / (metadata.e_max - metadata.e_min);
  double total = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    const double x = scaled_nodes[j];
    const double d_energy = std::numbers::pi * std::sqrt(1.0 - x * x) / (n * a);
    total += density_per_phonon_energy[j] * d_energy;
  }
  return total;
}

SpectralResult reconstruct(const MomentSeries& moments, std::span<const double> factors,
                           double omega_delta_hz) {
  const int n = moments.n_moments();
  if (n < 1) throw DomainError("reconstruct: no moments");
  if (factors.size() != static_cast<std::size_t>(n)) {
    throw DomainError("reconstruct: factor count does not match moment count");
  }
  if (!(omega_delta_hz > 0.0)) throw DomainError("reconstruct: omega_delta must be > 0");

  // DCT-III (FFTW REDFT01): y_j = x_0 + 2 sum_{r>=1} x_r cos(pi r (j + 1/2) / n).
  std::vector<double> damped(static_cast<std::size_t>(n));
  std::vector<double> summed(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    damped[static_cast<std::size_t>(r)] =
        moments.moments[static_cast<std::size_t>(r)] * factors[static_cast<std::size_t>(r)];
  }
  if (n == 1) {
    summed[0] = damped[0];
  } else {
    fftw_plan plan;
    {
      std::lock_guard lock(fftw_planner_mutex());
      plan = fftw_plan_r2r_1d(n, damped.data(), summed.data(), FFTW_REDFT01, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericalError("reconstruct: FFTW could not plan a DCT-III");
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  const ChebyshevScale& map = moments.map;
  SpectralResult out;
  out.k_index = moments.k_index;
  out.metadata.e_min = map.e_min;
  out.metadata.e_max = map.e_max;
  out.metadata.n_moments = n;
  out.metadata.epsilon = map.epsilon;
  out.metadata.omega_delta_hz = omega_delta_hz;
  out.metadata.max_imag_residue = moments.max_imag_residue;
  out.scaled_nodes.resize(static_cast<std::size_t>(n));
  out.energies.resize(static_cast<std::size_t>(n));
  out.omega_hz.resize(static_cast<std::size_t>(n));
  out.density.resize(static_cast<std::size_t>(n));
  out.density_per_phonon_energy.resize(static_cast<std::size_t>(n));
  // Node j has xbar = cos(theta_j), decreasing in j; store ascending.
  for (int j = 0; j < n; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / n;
    const double f = summed[static_cast<std::size_t>(j)] / (std::numbers::pi * std::sin(theta));
    const auto slot = static_cast<std::size_t>(n - 1 - j);
    const double x = std::cos(theta);
    out.scaled_nodes[slot] = x;
    out.energies[slot] = map.to_energy(x);
    out.omega_hz[slot] = out.energies[slot] * omega_delta_hz;
    out.density_per_phonon_energy[slot] = map.scale * f;
    out.density[slot] = map.scale * f / omega_delta_hz;
  }
  return out;
}

namespace {

SpectralResult exact_delta(const SparseHamiltonian& h, const SpectralBounds& bounds,
                           const EffectiveParams& params, const KpmOptions& options) {
  SpectralResult out;
  out.k_index = h.sector.k_index;
  out.k_value = h.sector.k_value();
  const double energy = h.dim() == 1 ? h.entry(0, 0).real() : 0.5 * (bounds.e_min + bounds.e_max);
  out.scaled_nodes = {0.0};
  out.energies = {energy};
  out.omega_hz = {energy * params.omega_delta};
  out.density = {1.0};
  out.density_per_phonon_energy = {1.0};
  out.metadata.e_min = bounds.e_min;
  out.metadata.e_max = bounds.e_max;
  out.metadata.n_moments = options.n_moments;
  out.metadata.epsilon = options.epsilon;
  out.metadata.omega_delta_hz = params.omega_delta;
  out.metadata.lanczos_iterations = bounds.lanczos_iterations;
  out.metadata.lanczos_residual = bounds.residual;
  out.metadata.top_shell_weight = bounds.top_shell_weight;
  out.metadata.exact_delta = true;
  return out;
}

template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

}  // namespace

SpectralResult spectral_function(const SparseHamiltonian& h, const PhononBasis& basis,
                                 const EffectiveParams& params, const KpmOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const SpectralBounds bounds = staged("lanczos", [&] {
    return extremal_eigenvalues(h, options.lanczos_tol, options.lanczos_max_iter);
  });

  const double spread = bounds.e_max - bounds.e_min;
  const double magnitude = std::max({1.0, std::abs(bounds.e_min), std::abs(bounds.e_max)});
  SpectralResult result;
  if (spread <= 1e-12 * magnitude) {
    result = exact_delta(h, bounds, params, options);
  } else {
    const RescaledOperator op = staged("rescale", [&] { return rescale(h, bounds, options.epsilon); });
    const StateVector start = staged("start vector", [&] { return bloch_start_vector(h.sector, basis); });
    const MomentSeries moments =
        staged("moments", [&] { return compute_moments(op, start, options.n_moments); });
    const std::vector<double> factors = jackson_factors(options.n_moments);
    result = staged("reconstruct", [&] { return reconstruct(moments, factors, params.omega_delta); });
    result.k_value = h.sector.k_value();
    result.metadata.lanczos_iterations = bounds.lanczos_iterations;
    result.metadata.lanczos_residual = bounds.residual;
    result.metadata.top_shell_weight = bounds.top_shell_weight;
  }
  result.metadata.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

SpectralResult spectral_function(const KSector& sector, const PhononBasis& basis,
                                 const EffectiveParams& params, const KpmOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const SparseHamiltonian h = staged("assemble", [&] { return assemble(sector, basis, params); });
  SpectralResult result = spectral_function(h, basis, params, options);
  result.metadata.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace polaron
