// Cost of generator assembly, stationary solves, and the two apply paths as
// the chain grows. Not wired into ctest; run the binary directly.

#include <benchmark/benchmark.h>

#include <random>

#include "cascade/liouvillian.hpp"
#include "cascade/rates.hpp"
#include "cascade/steady_state.hpp"
#include "cascade/types.hpp"

namespace {

using namespace cascade;

ChainSpec chain_of(int n) {
  ChainSpec chain;
  chain.n_atoms = n;
  chain.omega0 = 1.0;
  chain.step = 0.5;
  return chain;
}

RateSet rates_of(const ChainSpec& chain) {
  return spp_chain_rate_set(chain, SppChainModel{}, CouplingMode::unidirectional, 1.5, 1.5);
}

DenseMatrix seeded_density(Eigen::Index dim) {
  std::mt19937 rng(1234);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  DenseMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const ChainSpec chain = chain_of(static_cast<int>(state.range(0)));
  const RateSet rates = rates_of(chain);
  for (auto _ : state) {
    const Liouvillian liouvillian = build_liouvillian(chain, rates);
    benchmark::DoNotOptimize(liouvillian.matrix.nonZeros());
  }
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(2, 5);

void BM_SteadyState(benchmark::State& state) {
  const ChainSpec chain = chain_of(static_cast<int>(state.range(0)));
  const Liouvillian liouvillian = build_liouvillian(chain, rates_of(chain));
  for (auto _ : state) {
    const DenseMatrix rho = steady_state(liouvillian);
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_SteadyState)->DenseRange(2, 5);

void BM_ExplicitApply(benchmark::State& state) {
  const ChainSpec chain = chain_of(static_cast<int>(state.range(0)));
  const Liouvillian liouvillian = build_liouvillian(chain, rates_of(chain));
  const DenseMatrix rho = seeded_density(hilbert_dim(chain.n_atoms));
  const Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
  for (auto _ : state) {
    const Vector image = liouvillian.apply(v);
    benchmark::DoNotOptimize(image.data());
  }
}
BENCHMARK(BM_ExplicitApply)->DenseRange(2, 6);

void BM_MatrixFreeApply(benchmark::State& state) {
  const ChainSpec chain = chain_of(static_cast<int>(state.range(0)));
  const MatrixFreeLiouvillian generator(chain, rates_of(chain));
  const DenseMatrix rho = seeded_density(hilbert_dim(chain.n_atoms));
  for (auto _ : state) {
    const DenseMatrix image = generator.apply(rho);
    benchmark::DoNotOptimize(image.data());
  }
}
BENCHMARK(BM_MatrixFreeApply)->DenseRange(2, 6);

}  // namespace

BENCHMARK_MAIN();
