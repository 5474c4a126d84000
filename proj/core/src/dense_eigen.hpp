#pragma once

#include <vector>

#include "polaron/types.hpp"

namespace polaron::detail {

struct FirstRowSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> weights;      // |<e_0|psi_j>|^2
};

// Eigenvalues of a Hermitian n x n row-major matrix together with the
// squared first components of its eigenvectors. Householder
// tridiagonalization leaves e_0 fixed, so only the first row of the QL
// rotations has to be tracked (Golub-Welsch), which avoids the O(n^3)
// eigenvector accumulation.
FirstRowSpectrum first_row_spectrum(const std::vector<double>& a, Index n);
FirstRowSpectrum first_row_spectrum(const std::vector<Complex>& a, Index n);

// Full decomposition of a real symmetric row-major matrix. Eigenvectors are
// returned column-major (eigenvector j at vectors[j * n ...]).
void symmetric_eigen(const std::vector<double>& a, Index n, std::vector<double>& values,
                     std::vector<double>* vectors);

}  // namespace polaron::detail
