#include "polaron/parallel.hpp"

#include <vector>

#include "polaron/error.hpp"

#ifdef POLARON_HAVE_OPENMP
#include <omp.h>
#endif

namespace polaron::parallel {

void set_threads(int n) {
#ifdef POLARON_HAVE_OPENMP
  if (n > 0) omp_set_num_threads(n);
  omp_set_max_active_levels(1);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef POLARON_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

template <typename T, typename BlockFn>
T blocked_sum(std::size_t n, BlockFn&& block_fn) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) return n == 0 ? T{} : block_fn(0, n);
  std::vector<T> partial(blocks);
  const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = block_fn(lo, hi);
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("dot: dimension mismatch");
  return blocked_sum<Complex>(a.size(), [&](std::size_t lo, std::size_t hi) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double ar = a[i].real(), ai = a[i].imag();
      const double br = b[i].real(), bi = b[i].imag();
      re += ar * br + ai * bi;
      im += ar * bi - ai * br;
    }
    return Complex{re, im};
  });
}

double norm_squared(std::span<const Complex> a) {
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
    return s;
  });
}

}  // namespace polaron::parallel
