#include "dense_eigen.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polaron/error.hpp"

namespace polaron::detail {

namespace {

template <typename Scalar>
using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Implicit QL on the tridiagonal (d, e), e[i] = T(i + 1, i), rotating the
// row vector z along.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const std::size_t n = d.size();
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw NumericalError("tridiagonal QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

template <typename Scalar>
FirstRowSpectrum first_row_impl(const std::vector<Scalar>& a, Index n) {
  FirstRowSpectrum out;
  if (n == 0) return out;
  const auto dim = static_cast<Eigen::Index>(n);
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  std::vector<double> d, e;
  if (n == 1) {
    d = {std::real(a[0])};
  } else {
    const Matrix m = Eigen::Map<const RowMajor<Scalar>>(a.data(), dim, dim);
    Eigen::Tridiagonalization<Matrix> tri(m);
    const Eigen::VectorXd diag = tri.diagonal();
    const Eigen::VectorXd sub = tri.subDiagonal();
    d.assign(diag.data(), diag.data() + diag.size());
    e.assign(sub.data(), sub.data() + sub.size());
  }
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.eigenvalues.reserve(n);
  out.weights.reserve(n);
  for (std::size_t j : order) {
    out.eigenvalues.push_back(d[j]);
    out.weights.push_back(z[j] * z[j]);
  }
  return out;
}

}  // namespace

FirstRowSpectrum first_row_spectrum(const std::vector<double>& a, Index n) {
  return first_row_impl(a, n);
}

FirstRowSpectrum first_row_spectrum(const std::vector<Complex>& a, Index n) {
  return first_row_impl(a, n);
}

void symmetric_eigen(const std::vector<double>& a, Index n, std::vector<double>& values,
                     std::vector<double>* vectors) {
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd m = Eigen::Map<const RowMajor<double>>(a.data(), dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, vectors != nullptr ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
  if (vectors != nullptr) {
    vectors->assign(solver.eigenvectors().data(), solver.eigenvectors().data() + dim * dim);
  }
}

}  // namespace polaron::detail
