#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "polaron/error.hpp"
#include "polaron/hamiltonian.hpp"
#include "polaron/parallel.hpp"

namespace polaron {

namespace {

struct RitzPair {
  double value = 0.0;
  double estimate = 0.0;  // beta_{j+1} |s_last|
  Eigen::VectorXd coefficients;
};

struct RitzExtremes {
  RitzPair low;
  RitzPair high;
};

RitzExtremes ritz_extremes(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i + 1)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double tail = beta[static_cast<std::size_t>(m)];
  RitzExtremes out;
  out.low.value = solver.eigenvalues()[0];
  out.low.coefficients = solver.eigenvectors().col(0);
  out.low.estimate = std::abs(tail * out.low.coefficients[m - 1]);
  out.high.value = solver.eigenvalues()[m - 1];
  out.high.coefficients = solver.eigenvectors().col(m - 1);
  out.high.estimate = std::abs(tail * out.high.coefficients[m - 1]);
  return out;
}

StateVector random_start(Index dim, int k_index) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(k_index + 1024));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVector v(dim);
  for (auto& x : v) x = {u(rng), u(rng)};
  const double norm = std::sqrt(parallel::norm_squared(v));
  for (auto& x : v) x /= norm;
  return v;
}

// One Lanczos step: w <- H v - alpha v - beta v_prev, returns alpha.
double lanczos_step(const SparseHamiltonian& h, const StateVector& v, const StateVector& v_prev,
                    double beta, StateVector& w) {
  matvec(h, v, w);
  const double alpha = parallel::dot(v, w).real();
  const auto n = static_cast<long long>(w.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    w[k] -= alpha * v[k] + beta * v_prev[k];
  }
  return alpha;
}

struct Verified {
  double residual_low = 0.0;
  double residual_high = 0.0;
  double shell_weight = 0.0;
};

// Replays the recurrence from the same start vector to assemble both Ritz
// vectors, then measures their true residuals.
Verified verify(const SparseHamiltonian& h, const std::vector<double>& alpha,
                const std::vector<double>& beta, const RitzExtremes& ritz) {
  const Index shell_start = h.top_shell_begin;
  const Index dim = h.dim();
  const std::size_t steps = alpha.size();
  StateVector v = random_start(dim, h.sector.k_index);
  StateVector v_prev(dim, Complex{0.0, 0.0});
  StateVector w(dim);
  StateVector y_low(dim, Complex{0.0, 0.0});
  StateVector y_high(dim, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < steps; ++j) {
    const double c_low = ritz.low.coefficients[static_cast<Eigen::Index>(j)];
    const double c_high = ritz.high.coefficients[static_cast<Eigen::Index>(j)];
    for (Index i = 0; i < dim; ++i) {
      y_low[i] += c_low * v[i];
      y_high[i] += c_high * v[i];
    }
    if (j + 1 == steps) break;
    lanczos_step(h, v, v_prev, beta[j], w);
    const double b = beta[j + 1];
    for (Index i = 0; i < dim; ++i) {
      v_prev[i] = v[i];
      v[i] = w[i] / b;
    }
  }
  auto residual = [&](const StateVector& y, double theta) {
    matvec(h, y, w);
    for (Index i = 0; i < dim; ++i) w[i] -= theta * y[i];
    return std::sqrt(parallel::norm_squared(w) / parallel::norm_squared(y));
  };
  Verified out;
  out.residual_low = residual(y_low, ritz.low.value);
  out.residual_high = residual(y_high, ritz.high.value);
  double shell = 0.0;
  for (Index i = shell_start; i < dim; ++i) shell += std::norm(y_low[i]);
  out.shell_weight = shell / parallel::norm_squared(y_low);
  return out;
}

}  // namespace

SpectralBounds extremal_eigenvalues(const SparseHamiltonian& h, double tol, int max_iter) {
  const Index dim = h.dim();
  if (dim == 0) throw DomainError("extremal_eigenvalues: empty matrix");
  if (!(tol > 0.0)) throw DomainError("extremal_eigenvalues: tol must be > 0");
  if (max_iter < 1) throw DomainError("extremal_eigenvalues: max_iter must be >= 1");

  if (dim == 1) {
    SpectralBounds b;
    b.e_min = b.e_max = h.entry(0, 0).real();
    b.top_shell_weight = 1.0;
    return b;
  }

  StateVector v = random_start(dim, h.sector.k_index);
  StateVector v_prev(dim, Complex{0.0, 0.0});
  StateVector w(dim);
  std::vector<double> alpha;
  std::vector<double> beta{0.0};

  const int limit = static_cast<int>(std::min<Index>(static_cast<Index>(max_iter), 4 * dim + 8));
  RitzExtremes ritz;
  double scale = 1.0;
  bool exhausted = false;
  int next_check = 1;
  for (int j = 0; j < limit; ++j) {
    alpha.push_back(lanczos_step(h, v, v_prev, beta.back(), w));
    const double b = std::sqrt(parallel::norm_squared(w));
    beta.push_back(b);
    exhausted = b <= 1e-13 * std::max(1.0, std::abs(alpha.back()));

    const bool last = exhausted || j + 1 == limit;
    if (j + 1 >= next_check || last) {
      ritz = ritz_extremes(alpha, beta);
      scale = std::max(ritz.high.value - ritz.low.value, 1.0);
      const bool estimated = std::max(ritz.low.estimate, ritz.high.estimate) <= tol * scale;
      if (estimated || last) {
        const Verified check = verify(h, alpha, beta, ritz);
        const double worst = std::max(check.residual_low, check.residual_high) / scale;
        if (worst <= tol || exhausted) {
          SpectralBounds bounds;
          bounds.e_min = ritz.low.value;
          bounds.e_max = ritz.high.value;
          bounds.lanczos_iterations = j + 1;
          bounds.residual = worst;
          bounds.top_shell_weight = check.shell_weight;
          return bounds;
        }
      }
      next_check = j + 1 + std::max(5, (j + 1) / 10);
    }
    if (exhausted) break;
    for (Index i = 0; i < dim; ++i) {
      v_prev[i] = v[i];
      v[i] = w[i] / b;
    }
  }
  throw ConvergenceError("Lanczos did not reach tol " + std::to_string(tol) + " within " +
                             std::to_string(limit) + " iterations",
                         ritz.low.value, ritz.high.value,
                         std::max(ritz.low.estimate, ritz.high.estimate) / scale);
}

}  // namespace polaron
