#include "polaron/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "polaron/error.hpp"

namespace polaron {

namespace {

constexpr Index kSaturated = std::numeric_limits<Index>::max();

Index saturating_add(Index a, Index b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

}  // namespace

int PhononConfig::total() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

// binomials_ holds C(j + p, p) at [j * table_cols_ + p] for j <= M, p <= N:
// the number of configurations of p sites with total <= j.
PhononBasis::PhononBasis(int n_sites, int max_total) : n_sites_(n_sites), max_total_(max_total) {
  if (n_sites < 1) throw DomainError("PhononBasis: n_sites must be >= 1");
  if (max_total < 0) throw DomainError("PhononBasis: max_total must be >= 0");
  table_cols_ = n_sites + 1;
  binomials_.assign(static_cast<std::size_t>(max_total + 1) * table_cols_, 0);
  for (int j = 0; j <= max_total; ++j) {
    for (int p = 0; p <= n_sites; ++p) {
      Index value = 1;
      if (j > 0 && p > 0) {
        value = saturating_add(binomials_[(j - 1) * table_cols_ + p],
                               binomials_[j * table_cols_ + p - 1]);
      }
      binomials_[j * table_cols_ + p] = value;
    }
  }
  size_ = binomials_[max_total * table_cols_ + n_sites];
  if (size_ == kSaturated) {
    throw CapacityError("PhononBasis: C(" + std::to_string(max_total + n_sites) + ", " +
                        std::to_string(n_sites) + ") overflows the index type");
  }
}

Index PhononBasis::binom(int j, int p) const {
  return binomials_[static_cast<std::size_t>(j) * table_cols_ + p];
}

Index PhononBasis::count_up_to(int s) const {
  if (s < 0) return 0;
  if (s > max_total_) {
    throw DomainError("count_up_to: total exceeds the truncation");
  }
  return binom(s, n_sites_);
}

bool PhononBasis::contains(std::span<const int> occupations) const {
  if (occupations.size() != static_cast<std::size_t>(n_sites_)) return false;
  long total = 0;
  for (int m : occupations) {
    if (m < 0) return false;
    total += m;
  }
  return total <= max_total_;
}

Index PhononBasis::rank(std::span<const int> occupations) const {
  if (!contains(occupations)) {
    throw DomainError("rank: configuration is not in the truncated basis (N=" +
                      std::to_string(n_sites_) + ", M=" + std::to_string(max_total_) + ")");
  }
  int remaining = std::accumulate(occupations.begin(), occupations.end(), 0);
  Index index = count_up_to(remaining - 1);
  for (int i = 0; i + 1 < n_sites_; ++i) {
    const int m = occupations[i];
    // Configurations of the same grade with a larger occupation at site i
    // come first: C(remaining - m - 1 + p, p) of them, p = sites after i.
    if (remaining > m) index += binom(remaining - m - 1, n_sites_ - i - 1);
    remaining -= m;
  }
  return index;
}

PhononConfig PhononBasis::unrank(Index index) const {
  PhononConfig config;
  config.occupations.resize(n_sites_);
  unrank_into(index, config.occupations);
  return config;
}

void PhononBasis::unrank_into(Index index, std::span<int> out) const {
  if (index >= size_) throw DomainError("unrank: index out of range");
  if (out.size() != static_cast<std::size_t>(n_sites_)) {
    throw DomainError("unrank: output span has the wrong length");
  }
  int grade = 0;
  while (binom(grade, n_sites_) <= index) ++grade;
  Index within = index - count_up_to(grade - 1);
  int remaining = grade;
  for (int i = 0; i + 1 < n_sites_; ++i) {
    const int parts_after = n_sites_ - i - 1;
    int value = remaining;
    for (; value >= 0; --value) {
      // Compositions of (remaining - value) into parts_after sites.
      const Index block = binom(remaining - value, parts_after - 1);
      if (within < block) break;
      within -= block;
    }
    out[i] = value;
    remaining -= value;
  }
  out[n_sites_ - 1] = remaining;
}

bool PhononBasis::next(std::span<int> occupations) const {
  const int n = n_sites_;
  int pivot = -1;
  for (int i = n - 2; i >= 0; --i) {
    if (occupations[i] > 0) {
      pivot = i;
      break;
    }
  }
  if (pivot >= 0) {
    int tail = 0;
    for (int j = pivot + 1; j < n; ++j) tail += occupations[j];
    occupations[pivot] -= 1;
    occupations[pivot + 1] = tail + 1;
    for (int j = pivot + 2; j < n; ++j) occupations[j] = 0;
    return true;
  }
  const int grade = occupations[n - 1];
  if (grade + 1 > max_total_) return false;
  std::fill(occupations.begin(), occupations.end(), 0);
  occupations[0] = grade + 1;
  return true;
}

void translate_into(std::span<const int> occupations, int shift, std::span<int> out) {
  const int n = static_cast<int>(occupations.size());
  const int s = ((shift % n) + n) % n;
  for (int l = 0; l < n; ++l) out[l] = occupations[(l - s + n) % n];
}

PhononConfig translate_config(const PhononConfig& config, int shift) {
  PhononConfig out;
  out.occupations.resize(config.occupations.size());
  translate_into(config.occupations, shift, out.occupations);
  return out;
}

double KSector::k_value() const {
  return 2.0 * std::numbers::pi * static_cast<double>(k_index) / static_cast<double>(n_sites);
}

Complex KSector::bloch_phase() const {
  if ((4 * k_index) % n_sites == 0) {
    switch ((((4 * k_index) / n_sites) % 4 + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, k_value());
}

KSector make_sector(int k_index, const PhononBasis& basis) {
  const int n = basis.n_sites();
  if (n % 2 != 0) throw DomainError("make_sector: the number of sites must be even");
  if (k_index <= -n / 2 || k_index > n / 2) {
    throw DomainError("make_sector: k_index " + std::to_string(k_index) +
                      " outside {-N/2+1, ..., N/2} for N=" + std::to_string(n));
  }
  return KSector{k_index, n, basis.size()};
}

std::vector<KSector> all_sectors(const PhononBasis& basis) {
  std::vector<KSector> out;
  const int n = basis.n_sites();
  for (int k = -n / 2 + 1; k <= n / 2; ++k) out.push_back(make_sector(k, basis));
  return out;
}

StateVector bloch_start_vector(const KSector& sector, const PhononBasis& basis) {
  if (sector.dim != basis.size()) {
    throw DomainError("bloch_start_vector: sector does not belong to this basis");
  }
  StateVector v(sector.dim, Complex{0.0, 0.0});
  v[0] = 1.0;  // the vacuum configuration ranks first
  return v;
}

}  // namespace polaron
