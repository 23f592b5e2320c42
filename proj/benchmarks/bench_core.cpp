#include <benchmark/benchmark.h>

#include "qwit/models.hpp"
#include "qwit/mub.hpp"
#include "qwit/states.hpp"
#include "qwit/witness.hpp"

using namespace qwit;

namespace {

ComplexMatrix heisenberg(int L) {
  ModelSpec s;
  s.family = ModelFamily::Heisenberg;
  s.L = L;
  s.W = 1.0;
  return build_heisenberg(s);
}

void BM_EigHermitian(benchmark::State& state) {
  const ComplexMatrix h = heisenberg(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_RotateState(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  Rng rng(1);
  const DensityMatrix rho = random_generic_density(Index{1} << L, rng);
  const Bipartition part = Bipartition::qubits(L / 2, L - L / 2);
  const MubRotation ua = local_x_rotation(L / 2), ub = local_x_rotation(L - L / 2);
  for (auto _ : state) benchmark::DoNotOptimize(rotate_state(rho, part, ua, ub));
}
BENCHMARK(BM_RotateState)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Negativity(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  Rng rng(2);
  const DensityMatrix rho = random_generic_density(Index{1} << L, rng);
  const Bipartition part = Bipartition::qubits(L / 2, L - L / 2);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho, part));
}
BENCHMARK(BM_Negativity)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_LindbladUnitTime(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const ComplexMatrix h = heisenberg(L);
  const DensityMatrix rho0 = neel_state(L);
  const LindbladSpec spec{0.1, 0.01, {1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_evolve(rho0, h, spec));
}
BENCHMARK(BM_LindbladUnitTime)->DenseRange(4, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
