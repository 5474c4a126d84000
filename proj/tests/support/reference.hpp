#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code path it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <polaron/params.hpp>

namespace ref {

using Complex = std::complex<double>;

inline polaron::EffectiveParams lattice(int n_sites, int max_phonons, double g_h, double ratio,
                                        double omega_delta = 75e6) {
  return polaron::from_adiabaticity(ratio, omega_delta, g_h, n_sites, max_phonons);
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// All configurations of n sites with total <= m, sorted by total and then
// descending occupation of site 0, 1, ...
inline std::vector<std::vector<int>> enumerate_configs(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int site, int left) {
    if (site == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[site] = v;
      rec(site + 1, left - v);
    }
    cur[site] = 0;
  };
  rec(0, m);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int ta = 0, tb = 0;
    for (int x : a) ta += x;
    for (int x : b) tb += x;
    if (ta != tb) return ta < tb;
    return a > b;
  });
  return out;
}

// Jackson factors as the normalized autocorrelation of a sine window.
inline std::vector<double> jackson_by_autocorrelation(int n) {
  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) a[j] = std::sin(std::numbers::pi * (j + 1) / (n + 1));
  double norm = 0.0;
  for (double x : a) norm += x * x;
  std::vector<double> g(n);
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int j = 0; j + r < n; ++j) s += a[j] * a[j + r];
    g[r] = s / norm;
  }
  return g;
}

// f(x_j) = [mu_0 g_0 + 2 sum_r mu_r g_r T_r(x_j)] / (pi sqrt(1 - x_j^2)) on
// the Chebyshev nodes, in ascending x order.
inline std::vector<double> naive_chebyshev_sum(const std::vector<double>& mu,
                                               const std::vector<double>& g) {
  const int n = static_cast<int>(mu.size());
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / n;
    double s = mu[0] * g[0];
    for (int r = 1; r < n; ++r) s += 2.0 * mu[r] * g[r] * std::cos(r * theta);
    out[n - 1 - j] = s / (std::numbers::pi * std::sin(theta));
  }
  return out;
}

// Chebyshev moments of a weighted point spectrum given in scaled units.
inline std::vector<double> moments_of(const std::vector<double>& x, const std::vector<double>& w,
                                      int n) {
  std::vector<double> mu(n, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double theta = std::acos(std::clamp(x[j], -1.0, 1.0));
    for (int r = 0; r < n; ++r) mu[r] += w[j] * std::cos(r * theta);
  }
  return mu;
}

struct Peak {
  std::size_t index = 0;
  double height = 0.0;
  double center = 0.0;
  double sigma = 0.0;
};

// Three-point Gaussian (log-parabola) fit around sample i.
inline Peak fit_peak(const std::vector<double>& x, const std::vector<double>& y, std::size_t i) {
  Peak p;
  p.index = i;
  p.height = y[i];
  p.center = x[i];
  if (i == 0 || i + 1 >= y.size() || y[i - 1] <= 0.0 || y[i + 1] <= 0.0) return p;
  const double l0 = std::log(y[i - 1]), l1 = std::log(y[i]), l2 = std::log(y[i + 1]);
  const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
  // Parabola through (x_{i-1}, l0), (x_i, l1), (x_{i+1}, l2).
  const double d1 = (l1 - l0) / h1, d2 = (l2 - l1) / h2;
  const double a = (d2 - d1) / (h1 + h2);
  const double b = d1 - a * (x[i - 1] + x[i]);
  if (a >= 0.0) return p;
  p.center = -b / (2.0 * a);
  p.sigma = std::sqrt(-1.0 / (2.0 * a));
  return p;
}

inline std::size_t argmax(const std::vector<double>& y) {
  return static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
}

// Local maxima that are separated from every neighbouring counted maximum by
// a dip below half the smaller of the two heights, keeping only maxima at
// least `min_rel` times the tallest sample.
inline std::vector<Peak> resolved_peaks(const std::vector<double>& x, const std::vector<double>& y,
                                        double min_rel) {
  const double top = *std::max_element(y.begin(), y.end());
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] >= min_rel * top) cand.push_back(i);
  }
  std::vector<std::size_t> kept;
  for (std::size_t c : cand) {
    if (!kept.empty()) {
      const std::size_t prev = kept.back();
      const double dip = *std::min_element(y.begin() + prev, y.begin() + c + 1);
      if (dip >= 0.5 * std::min(y[prev], y[c])) {
        if (y[c] > y[prev]) kept.back() = c;
        continue;
      }
    }
    kept.push_back(c);
  }
  std::vector<Peak> out;
  for (std::size_t i : kept) out.push_back(fit_peak(x, y, i));
  return out;
}

}  // namespace ref
