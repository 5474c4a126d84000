#include <benchmark/benchmark.h>

#include <polaron/hamiltonian.hpp>
#include <polaron/hilbert.hpp>
#include <polaron/kpm.hpp>
#include <polaron/params.hpp>

using namespace polaron;

namespace {

EffectiveParams params(int n, int m) { return from_adiabaticity(1.0, 75e6, 2.667, n, m); }

void BM_Assemble(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PhononBasis basis(6, m);
  const auto p = params(6, m);
  const KSector s = make_sector(0, basis);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(s, basis, p));
  state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_Assemble)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Matvec(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PhononBasis basis(6, m);
  const SparseHamiltonian h = assemble(make_sector(0, basis), basis, params(6, m));
  StateVector x(h.dim(), Complex{1.0, 0.5}), y(h.dim());
  for (auto _ : state) {
    matvec(h, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.nnz()));
}
BENCHMARK(BM_Matvec)->Arg(8)->Arg(10)->Arg(12);

void BM_Moments(benchmark::State& state) {
  const PhononBasis basis(6, 8);
  const KSector s = make_sector(0, basis);
  const SparseHamiltonian h = assemble(s, basis, params(6, 8));
  const RescaledOperator op = rescale(h, extremal_eigenvalues(h), 0.01);
  const StateVector start = bloch_start_vector(s, basis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_moments(op, start, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Moments)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_RankUnrank(benchmark::State& state) {
  const PhononBasis basis(10, 8);
  std::vector<int> occ(10);
  Index i = 0;
  for (auto _ : state) {
    basis.unrank_into(i, occ);
    benchmark::DoNotOptimize(basis.rank(occ));
    i = (i + 7919) % basis.size();
  }
}
BENCHMARK(BM_RankUnrank);

void BM_Reconstruct(benchmark::State& state) {
  MomentSeries m;
  m.moments.assign(static_cast<std::size_t>(state.range(0)), 0.0);
  m.moments[0] = 1.0;
  const auto g = jackson_factors(static_cast<int>(m.moments.size()));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(m, g, 75e6));
}
BENCHMARK(BM_Reconstruct)->Arg(4096)->Arg(80000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
