#include "polaron/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

namespace polaron {

namespace {

constexpr Index kRowsPerChunk = 1 << 14;

struct Chunk {
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> columns;
  std::vector<Complex> values;
};

struct RowEntry {
  Index col;
  Complex value;
};

void require_matching(const KSector& sector, const PhononBasis& basis,
                      const EffectiveParams& params) {
  if (sector.dim != basis.size() || sector.n_sites != basis.n_sites()) {
    throw DomainError("assemble: sector does not belong to this basis");
  }
  if (params.n_sites != basis.n_sites() || params.max_phonons != basis.max_total()) {
    throw DomainError("assemble: parameters describe N=" + std::to_string(params.n_sites) +
                      ", M=" + std::to_string(params.max_phonons) + " but the basis is N=" +
                      std::to_string(basis.n_sites()) + ", M=" +
                      std::to_string(basis.max_total()));
  }
  if (!std::isfinite(params.t_e) || !std::isfinite(params.g_h) ||
      !std::isfinite(params.omega_delta) || params.omega_delta <= 0.0) {
    throw DomainError("assemble: t_e, g_h and omega_delta must be finite (omega_delta > 0)");
  }
}

void build_chunk(const PhononBasis& basis, Index first, Index last, Complex hop_forward,
                 double coupling, Chunk& out) {
  const int n = basis.n_sites();
  const int max_total = basis.max_total();
  std::vector<int> config(n), shifted(n);
  basis.unrank_into(first, config);
  out.counts.reserve(last - first);
  out.columns.reserve(5 * (last - first));
  out.values.reserve(5 * (last - first));

  const Complex hop_backward = std::conj(hop_forward);
  std::array<RowEntry, 5> row{};
  for (Index i = first; i < last; ++i) {
    int total = 0;
    for (int m : config) total += m;
    std::size_t used = 0;
    row[used++] = {i, Complex{static_cast<double>(total), 0.0}};

    if (hop_forward != Complex{0.0, 0.0}) {
      // Row m picks up -t e^{iK} from column T^{-1} m and -t e^{-iK} from T m.
      translate_into(config, -1, shifted);
      row[used++] = {basis.rank(shifted), hop_forward};
      translate_into(config, +1, shifted);
      row[used++] = {basis.rank(shifted), hop_backward};
    }
    if (coupling != 0.0) {
      const int m0 = config[0];
      if (total < max_total) {
        config[0] = m0 + 1;
        row[used++] = {basis.rank(config), coupling * std::sqrt(m0 + 1.0)};
        config[0] = m0;
      }
      if (m0 > 0) {
        config[0] = m0 - 1;
        row[used++] = {basis.rank(config), coupling * std::sqrt(static_cast<double>(m0))};
        config[0] = m0;
      }
    }

    std::sort(row.begin(), row.begin() + used,
              [](const RowEntry& a, const RowEntry& b) { return a.col < b.col; });
    std::uint32_t count = 0;
    for (std::size_t e = 0; e < used;) {
      const Index col = row[e].col;
      Complex sum = row[e].value;
      std::size_t f = e + 1;
      for (; f < used && row[f].col == col; ++f) sum += row[f].value;
      if (sum != Complex{0.0, 0.0} || col == i) {
        out.columns.push_back(static_cast<std::uint32_t>(col));
        out.values.push_back(sum);
        ++count;
      }
      e = f;
    }
    out.counts.push_back(count);
    if (i + 1 < last) basis.next(config);
  }
}

}  // namespace

Complex SparseHamiltonian::entry(Index row, Index col) const {
  if (row >= dim() || col >= dim()) throw DomainError("entry: index out of range");
  const auto begin = column_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row]);
  const auto end = column_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row + 1]);
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return {0.0, 0.0};
  return values[static_cast<std::size_t>(it - column_indices.begin())];
}

SparseHamiltonian assemble(const KSector& sector, const PhononBasis& basis,
                           const EffectiveParams& params) {
  require_matching(sector, basis, params);
  const Index dim = basis.size();
  if (dim > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("assemble: sector dimension " + std::to_string(dim) +
                        " exceeds the 32-bit column index");
  }
  if (dim > std::numeric_limits<std::size_t>::max() / (5 * sizeof(Complex))) {
    throw CapacityError("assemble: nonzero storage overflows size_t");
  }

  // hbar omega_delta units: phonon energy 1, hopping t_e / omega_delta.
  const double hopping = params.hopping_in_phonon_units();
  const Complex hop_forward = -hopping * sector.bloch_phase();
  const double coupling = params.g_h;

  const Index n_chunks = (dim + kRowsPerChunk - 1) / kRowsPerChunk;
  std::vector<Chunk> chunks(n_chunks);
  const auto nc = static_cast<long long>(n_chunks);
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < nc; ++c) {
    const Index first = static_cast<Index>(c) * kRowsPerChunk;
    const Index last = std::min(dim, first + kRowsPerChunk);
    build_chunk(basis, first, last, hop_forward, coupling, chunks[static_cast<std::size_t>(c)]);
  }

  SparseHamiltonian h;
  h.sector = sector;
  h.top_shell_begin = basis.count_up_to(basis.max_total() - 1);
  h.row_offsets.resize(dim + 1);
  std::size_t nnz = 0;
  for (const Chunk& c : chunks) nnz += c.values.size();
  h.column_indices.reserve(nnz);
  h.values.reserve(nnz);
  Index row = 0;
  h.row_offsets[0] = 0;
  for (Chunk& c : chunks) {
    for (std::uint32_t count : c.counts) {
      h.row_offsets[row + 1] = h.row_offsets[row] + count;
      ++row;
    }
    h.column_indices.insert(h.column_indices.end(), c.columns.begin(), c.columns.end());
    h.values.insert(h.values.end(), c.values.begin(), c.values.end());
    c = Chunk{};
  }
  return h;
}

void matvec(const SparseHamiltonian& h, std::span<const Complex> x, std::span<Complex> y) {
  const Index dim = h.dim();
  if (x.size() != dim || y.size() != dim) {
    throw DomainError("matvec: vector length " + std::to_string(x.size()) + "/" +
                      std::to_string(y.size()) + " does not match dimension " +
                      std::to_string(dim));
  }
  const std::uint64_t* offsets = h.row_offsets.data();
  const std::uint32_t* cols = h.column_indices.data();
  const Complex* vals = h.values.data();
  const auto n = static_cast<long long>(dim);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    Complex sum{0.0, 0.0};
    for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) sum += vals[e] * x[cols[e]];
    y[static_cast<std::size_t>(i)] = sum;
  }
}

StateVector matvec(const SparseHamiltonian& h, std::span<const Complex> x) {
  StateVector y(h.dim());
  matvec(h, x, y);
  return y;
}

double hermiticity_defect(const SparseHamiltonian& h) {
  double worst = 0.0;
  for (Index i = 0; i < h.dim(); ++i) {
    for (std::uint64_t e = h.row_offsets[i]; e < h.row_offsets[i + 1]; ++e) {
      const Index j = h.column_indices[e];
      worst = std::max(worst, std::abs(h.values[e] - std::conj(h.entry(j, i))));
    }
  }
  return worst;
}

namespace {

template <typename T>
void write_le(std::ofstream& out, T value) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(value);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
}

template <typename T>
T read_le(std::ifstream& in) {
  std::uint64_t bits = 0;
  in.read(reinterpret_cast<char*>(&bits), sizeof(bits));
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_binary(const SparseHamiltonian& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_le<std::uint64_t>(out, h.dim());
  write_le<std::uint64_t>(out, h.nnz());
  for (std::uint64_t off : h.row_offsets) write_le<std::uint64_t>(out, off);
  for (std::uint32_t col : h.column_indices) write_le<std::uint64_t>(out, col);
  for (const Complex& v : h.values) {
    write_le<double>(out, v.real());
    write_le<double>(out, v.imag());
  }
  if (!out) throw IoError("write failed for " + path.string());
}

SparseHamiltonian read_binary(const std::filesystem::path& path, const KSector& sector) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  SparseHamiltonian h;
  h.sector = sector;
  const auto dim = read_le<std::uint64_t>(in);
  const auto nnz = read_le<std::uint64_t>(in);
  if (!in || dim != sector.dim) throw IoError(path.string() + ": header does not match sector");
  h.row_offsets.resize(dim + 1);
  for (auto& off : h.row_offsets) off = read_le<std::uint64_t>(in);
  h.column_indices.resize(nnz);
  for (auto& col : h.column_indices) col = static_cast<std::uint32_t>(read_le<std::uint64_t>(in));
  h.values.resize(nnz);
  for (auto& v : h.values) {
    const double re = read_le<double>(in);
    const double im = read_le<double>(in);
    v = {re, im};
  }
  if (!in) throw IoError(path.string() + ": truncated file");
  return h;
}

}  // namespace polaron
