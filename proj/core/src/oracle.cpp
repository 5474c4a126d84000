#include "polaron/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "dense_eigen.hpp"
#include "polaron/error.hpp"

namespace polaron {

namespace {

struct Term {
  Index index;
  double value;
};

void guard_dimension(Index dim, const char* what) {
  if (dim > kDenseDimensionLimit) {
    throw CapacityError(std::string(what) + ": dimension " + std::to_string(dim) +
                        " exceeds the dense limit of " + std::to_string(kDenseDimensionLimit));
  }
}

void require_matching(const PhononBasis& basis, const EffectiveParams& params) {
  if (params.n_sites != basis.n_sites() || params.max_phonons != basis.max_total()) {
    throw DomainError("oracle: parameters and basis disagree on N or M");
  }
}

// H |n, m> in the real-space basis, appended to `out`.
void real_space_column(const PhononBasis& basis, const EffectiveParams& params, int site,
                       std::vector<int>& config, std::vector<Term>& out) {
  const int n = basis.n_sites();
  const Index d = basis.size();
  const double t = params.hopping_in_phonon_units();
  const double g = params.g_h;
  const Index here = basis.rank(config);
  int total = 0;
  for (int m : config) total += m;

  out.push_back({static_cast<Index>(site) * d + here, static_cast<double>(total)});
  if (t != 0.0) {
    const int right = (site + 1) % n;
    const int left = (site + n - 1) % n;
    out.push_back({static_cast<Index>(right) * d + here, -t});
    out.push_back({static_cast<Index>(left) * d + here, -t});
  }
  if (g != 0.0) {
    const int m = config[site];
    if (total < basis.max_total()) {
      config[site] = m + 1;
      out.push_back({static_cast<Index>(site) * d + basis.rank(config), g * std::sqrt(m + 1.0)});
      config[site] = m;
    }
    if (m > 0) {
      config[site] = m - 1;
      out.push_back({static_cast<Index>(site) * d + basis.rank(config), g * std::sqrt(double(m))});
      config[site] = m;
    }
  }
}

Complex phase(double k, int n) { return std::polar(1.0, k * n); }

}  // namespace

Index real_space_dim(const PhononBasis& basis) {
  return static_cast<Index>(basis.n_sites()) * basis.size();
}

std::vector<double> real_space_hamiltonian(const PhononBasis& basis,
                                           const EffectiveParams& params) {
  require_matching(basis, params);
  const Index dim = real_space_dim(basis);
  guard_dimension(dim, "real_space_hamiltonian");
  std::vector<double> h(static_cast<std::size_t>(dim * dim), 0.0);
  std::vector<int> config(basis.n_sites());
  std::vector<Term> terms;
  for (int site = 0; site < basis.n_sites(); ++site) {
    for (Index r = 0; r < basis.size(); ++r) {
      basis.unrank_into(r, config);
      terms.clear();
      real_space_column(basis, params, site, config, terms);
      const Index col = static_cast<Index>(site) * basis.size() + r;
      for (const Term& term : terms) h[term.index * dim + col] += term.value;
    }
  }
  return h;
}

std::vector<double> real_space_spectrum(const PhononBasis& basis, const EffectiveParams& params) {
  const std::vector<double> h = real_space_hamiltonian(basis, params);
  std::vector<double> values;
  detail::symmetric_eigen(h, real_space_dim(basis), values, nullptr);
  return values;
}

std::vector<Complex> dense_sector_matrix(const KSector& sector, const PhononBasis& basis,
                                         const EffectiveParams& params) {
  require_matching(basis, params);
  if (sector.n_sites != basis.n_sites() || sector.dim != basis.size()) {
    throw DomainError("dense_sector_matrix: sector does not belong to this basis");
  }
  const Index dim = sector.dim;
  guard_dimension(dim, "dense_sector_matrix");
  const int n = basis.n_sites();
  const double k = sector.k_value();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<Complex> out(static_cast<std::size_t>(dim * dim), Complex{});
  std::vector<int> config(n), shifted(n), back(n);
  std::vector<Term> terms;
  for (Index col = 0; col < dim; ++col) {
    basis.unrank_into(col, config);
    for (int site = 0; site < n; ++site) {
      // Component exp(iK site) / sqrt(N) on |site, T_site m>.
      translate_into(config, site, shifted);
      terms.clear();
      real_space_column(basis, params, site, shifted, terms);
      const Complex amp = norm * phase(k, site);
      for (const Term& term : terms) {
        const int target_site = static_cast<int>(term.index / basis.size());
        basis.unrank_into(term.index % basis.size(), shifted);
        translate_into(shifted, -target_site, back);
        const Index row = basis.rank(back);
        out[row * dim + col] += norm * std::conj(phase(k, target_site)) * amp * term.value;
      }
    }
  }
  return out;
}

double DenseSpectrum::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

DenseSpectrum dense_spectrum(const KSector& sector, const PhononBasis& basis,
                             const EffectiveParams& params) {
  const std::vector<Complex> h = dense_sector_matrix(sector, basis, params);
  const bool real = std::all_of(h.begin(), h.end(), [](Complex z) { return z.imag() == 0.0; });
  detail::FirstRowSpectrum solved;
  if (real) {
    std::vector<double> a(h.size());
    std::transform(h.begin(), h.end(), a.begin(), [](Complex z) { return z.real(); });
    solved = detail::first_row_spectrum(a, sector.dim);
  } else {
    solved = detail::first_row_spectrum(h, sector.dim);
  }
  DenseSpectrum out;
  out.sector = sector;
  out.omega_delta_hz = params.omega_delta;
  out.eigenvalues = std::move(solved.eigenvalues);
  out.weights = std::move(solved.weights);
  return out;
}

std::vector<double> dense_spectral_function(const DenseSpectrum& spectrum,
                                            std::span<const double> omega_hz, double width_hz,
                                            Broadening kind) {
  if (!(width_hz > 0.0)) throw DomainError("dense_spectral_function: width must be > 0");
  std::vector<double> out(omega_hz.size(), 0.0);
  const double gauss_norm = 1.0 / (width_hz * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t i = 0; i < omega_hz.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
      const double d = omega_hz[i] - spectrum.eigenvalues[j] * spectrum.omega_delta_hz;
      if (kind == Broadening::gaussian) {
        const double z = d / width_hz;
        sum += spectrum.weights[j] * gauss_norm * std::exp(-0.5 * z * z);
      } else {
        sum += spectrum.weights[j] * width_hz / (std::numbers::pi * (d * d + width_hz * width_hz));
      }
    }
    out[i] = sum;
  }
  return out;
}

std::vector<double> dense_spectral_function(const DenseSpectrum& spectrum,
                                            std::span<const double> omega_hz,
                                            std::span<const double> sigma_hz) {
  if (sigma_hz.size() != spectrum.eigenvalues.size()) {
    throw DomainError("dense_spectral_function: one width per eigenvalue required");
  }
  std::vector<double> out(omega_hz.size(), 0.0);
  for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
    const double s = sigma_hz[j];
    if (!(s > 0.0)) throw DomainError("dense_spectral_function: widths must be > 0");
    const double centre = spectrum.eigenvalues[j] * spectrum.omega_delta_hz;
    const double norm = spectrum.weights[j] / (s * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < omega_hz.size(); ++i) {
      const double z = (omega_hz[i] - centre) / s;
      out[i] += norm * std::exp(-0.5 * z * z);
    }
  }
  return out;
}

double jackson_sigma(double x, int n_moments) {
  if (n_moments < 1) throw DomainError("jackson_sigma: n_moments must be >= 1");
  const double n = n_moments;
  const double var = (n - x * x * (n - 1.0)) / (2.0 * (n + 1.0)) *
                     (1.0 - std::cos(2.0 * std::numbers::pi / (n + 1.0)));
  return std::sqrt(std::max(var, 0.0));
}

PeakList atomic_limit_spectrum(double g_h, double omega_delta_hz, int n_peaks) {
  if (n_peaks < 1) throw DomainError("atomic_limit_spectrum: n_peaks must be >= 1");
  const double g2 = g_h * g_h;
  PeakList out;
  double log_weight = -g2;  // log of exp(-g^2) g^(2m) / m!
  for (int m = 0; m < n_peaks; ++m) {
    if (m > 0) log_weight += (g2 > 0.0 ? std::log(g2) : -std::numeric_limits<double>::infinity()) - std::log(double(m));
    const double e = m - g2;
    out.energies.push_back(e);
    out.omega_hz.push_back(e * omega_delta_hz);
    out.weights.push_back(std::exp(log_weight));
  }
  return out;
}

PeakList single_site_spectrum(double g_h, double omega_delta_hz, int max_phonons) {
  if (max_phonons < 0) throw DomainError("single_site_spectrum: max_phonons must be >= 0");
  const auto dim = static_cast<Eigen::Index>(max_phonons) + 1;
  guard_dimension(static_cast<Index>(dim), "single_site_spectrum");
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd sub(std::max<Eigen::Index>(dim - 1, 0));
  for (Eigen::Index m = 0; m < dim; ++m) diag(m) = static_cast<double>(m);
  for (Eigen::Index m = 0; m + 1 < dim; ++m) sub(m) = g_h * std::sqrt(double(m + 1));
  PeakList out;
  if (dim == 1) {
    out.energies = {0.0};
    out.omega_hz = {0.0};
    out.weights = {1.0};
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("single_site_spectrum: eigensolver failed");
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double e = solver.eigenvalues()(j);
    out.energies.push_back(e);
    out.omega_hz.push_back(e * omega_delta_hz);
    out.weights.push_back(std::norm(solver.eigenvectors()(0, j)));
  }
  return out;
}

GreensSeries evolve_greens(const DenseSpectrum& spectrum, std::span<const double> times) {
  GreensSeries out;
  out.k_index = spectrum.sector.k_index;
  out.k_value = spectrum.sector.k_value();
  out.times.assign(times.begin(), times.end());
  out.values.resize(times.size());
  const double angular = 2.0 * std::numbers::pi * spectrum.omega_delta_hz;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) {
      out.values[i] = Complex{};
      continue;
    }
    Complex sum{};
    for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
      sum += spectrum.weights[j] * std::polar(1.0, -spectrum.eigenvalues[j] * angular * times[i]);
    }
    out.values[i] = Complex{0.0, -1.0} * sum;
  }
  return out;
}

GreensSeries evolve_greens(const KSector& sector, const PhononBasis& basis,
                           const EffectiveParams& params, std::span<const double> times) {
  return evolve_greens(dense_spectrum(sector, basis, params), times);
}

GreensSeries to_commutator(const GreensSeries& g) {
  GreensSeries out = g;
  for (Complex& v : out.values) v = -v;
  out.kind = g.kind == GreensKind::anticommutator ? GreensKind::commutator
                                                   : GreensKind::anticommutator;
  return out;
}

std::vector<double> greens_to_spectrum(const GreensSeries& g, std::span<const double> omega_hz,
                                       double eta) {
  if (g.times.size() != g.values.size()) throw DomainError("greens_to_spectrum: malformed series");
  if (g.times.size() < 2) throw DomainError("greens_to_spectrum: need at least two time points");
  if (eta < 0.0) throw DomainError("greens_to_spectrum: eta must be >= 0");
  const double sign = g.kind == GreensKind::anticommutator ? 1.0 : -1.0;
  std::vector<double> out(omega_hz.size(), 0.0);
  for (std::size_t f = 0; f < omega_hz.size(); ++f) {
    const double w = 2.0 * std::numbers::pi * omega_hz[f];
    double integral = 0.0;  // imaginary part only
    double prev_t = 0.0, prev_v = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < g.times.size(); ++i) {
      const double t = g.times[i];
      if (t < 0.0) continue;
      const double v =
          (sign * g.values[i] * std::polar(std::exp(-eta * t), w * t)).imag();
      if (have_prev) integral += 0.5 * (t - prev_t) * (v + prev_v);
      prev_t = t;
      prev_v = v;
      have_prev = true;
    }
    out[f] = -2.0 * integral;
  }
  return out;
}

}  // namespace polaron
