#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include <polaron/hamiltonian.hpp>

namespace ref {

inline Eigen::MatrixXcd to_dense(const polaron::SparseHamiltonian& h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (auto e = h.row_offsets[i]; e < h.row_offsets[i + 1]; ++e) {
      m(i, h.column_indices[e]) += h.values[e];
    }
  }
  return m;
}

inline std::vector<double> eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(m, Eigen::EigenvaluesOnly);
  return {s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size()};
}

inline std::vector<double> sector_eigenvalues(const polaron::SparseHamiltonian& h) {
  return eigenvalues(to_dense(h));
}

}  // namespace ref
