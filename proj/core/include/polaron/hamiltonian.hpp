#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "polaron/hilbert.hpp"
#include "polaron/params.hpp"
#include "polaron/types.hpp"

namespace polaron {

/// Holstein Hamiltonian of one momentum sector in compressed sparse rows,
/// in units of hbar omega_delta. Rows and columns are phonon-basis ranks of
/// the co-moving configuration |K, m>. Column indices within a row are
/// strictly increasing; the diagonal is always stored.
struct SparseHamiltonian {
  KSector sector;
  std::vector<std::uint64_t> row_offsets;  // dim + 1 entries
  std::vector<std::uint32_t> column_indices;
  std::vector<Complex> values;
  /// First row whose configuration has sum(m) = M.
  Index top_shell_begin = 0;

  Index dim() const noexcept { return sector.dim; }
  std::size_t nnz() const noexcept { return values.size(); }

  /// Stored entry (i, j) or zero.
  Complex entry(Index row, Index col) const;
};

/// Builds H|K,m> = (sum_l m_l)|K,m>
///              + g_H (sqrt(m_0) |K,m-e_0> + sqrt(m_0+1) |K,m+e_0>)
///              - t_e (e^{iK} |K,T m> + e^{-iK} |K,T^{-1} m>)
/// where site 0 carries the excitation and T shifts phonons by one site.
/// Raising out of the sum(m) = M shell is dropped.
SparseHamiltonian assemble(const KSector& sector, const PhononBasis& basis,
                           const EffectiveParams& params);

/// y = H x. Rows are processed in parallel; every row is summed in storage
/// order, so the output is bitwise independent of the thread count.
void matvec(const SparseHamiltonian& h, std::span<const Complex> x, std::span<Complex> y);
StateVector matvec(const SparseHamiltonian& h, std::span<const Complex> x);

/// max |H_ij - conj(H_ji)| over stored entries.
double hermiticity_defect(const SparseHamiltonian& h);

struct SpectralBounds {
  double e_min = 0.0;
  double e_max = 0.0;
  int lanczos_iterations = 0;
  /// max ||H y - theta y|| / ||y|| of the two Ritz pairs, divided by
  /// max(e_max - e_min, 1).
  double residual = 0.0;
  /// Weight of the lowest Ritz vector on the sum(m) = M shell.
  double top_shell_weight = 0.0;
};

/// Extremal eigenvalues by Lanczos without reorthogonalization, verified by
/// explicit residuals of the Ritz vectors (rebuilt in a second pass).
/// Throws ConvergenceError (with the best estimates) after max_iter steps.
SpectralBounds extremal_eigenvalues(const SparseHamiltonian& h, double tol = 1e-9,
                                    int max_iter = 3000);

/// Little-endian dump: u64 dim, u64 nnz, u64 row_offsets[dim+1],
/// u64 column_indices[nnz], f64 (re, im) pairs[nnz].
void write_binary(const SparseHamiltonian& h, const std::filesystem::path& path);
SparseHamiltonian read_binary(const std::filesystem::path& path, const KSector& sector);

}  // namespace polaron
