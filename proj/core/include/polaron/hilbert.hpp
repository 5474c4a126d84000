#pragma once

#include <span>
#include <vector>

#include "polaron/types.hpp"

// Truncated phonon space {m : sum(m) <= M} on an N-site ring and the
// momentum sectors of the one-excitation problem.
//
// Ordering is graded: configurations are sorted by total phonon number, and
// within one grade by descending occupation of site 0, then site 1, and so on.
// For N = 2, M = 2 the order is (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).
// Ranks come from the combinatorial number system, so no lookup tables of
// size D_ph are ever built.

namespace polaron {

struct PhononConfig {
  std::vector<int> occupations;

  int total() const;
  bool operator==(const PhononConfig&) const = default;
};

class PhononBasis {
 public:
  /// Throws DomainError for n_sites < 1 or max_total < 0, CapacityError if
  /// the number of configurations does not fit in Index.
  PhononBasis(int n_sites, int max_total);

  int n_sites() const noexcept { return n_sites_; }
  int max_total() const noexcept { return max_total_; }
  Index size() const noexcept { return size_; }

  /// Number of configurations with total phonon number <= s (s may exceed M).
  Index count_up_to(int s) const;

  /// True when every occupation is >= 0 and the total is <= max_total.
  bool contains(std::span<const int> occupations) const;

  /// Throws DomainError when the configuration is not in the basis.
  Index rank(std::span<const int> occupations) const;
  Index rank(const PhononConfig& config) const { return rank(config.occupations); }

  PhononConfig unrank(Index index) const;
  void unrank_into(Index index, std::span<int> out) const;

  /// Advances `occupations` to the configuration of rank + 1. Returns false
  /// (leaving the input unchanged) when already at the last configuration.
  bool next(std::span<int> occupations) const;

 private:
  Index binom(int n, int k) const;

  int n_sites_;
  int max_total_;
  Index size_ = 0;
  int table_cols_ = 0;
  std::vector<Index> binomials_;  // C(n, k) for n <= M + N, k <= N
};

/// Cyclic translation: result[l] = occupations[(l - shift) mod N]. A shift
/// of 1 moves every phonon one site to the right.
PhononConfig translate_config(const PhononConfig& config, int shift);
void translate_into(std::span<const int> occupations, int shift, std::span<int> out);

/// One quasimomentum sector K = 2 pi n / N, n in {-N/2 + 1, ..., N/2}.
struct KSector {
  int k_index = 0;
  int n_sites = 2;
  Index dim = 0;

  double k_value() const;

  /// exp(i K); exact for K a multiple of pi/2.
  Complex bloch_phase() const;
};

/// Throws DomainError for odd N or an index outside the Brillouin zone.
KSector make_sector(int k_index, const PhononBasis& basis);

/// All N sectors in ascending k_index.
std::vector<KSector> all_sectors(const PhononBasis& basis);

/// c_k^dagger |0> in the symmetry-adapted basis: the unit vector on the
/// zero-phonon configuration (rank 0).
StateVector bloch_start_vector(const KSector& sector, const PhononBasis& basis);

}  // namespace polaron
