#include <benchmark/benchmark.h>

#include <random>

#include "mixbound/chain.hpp"
#include "mixbound/mixing.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/harness.hpp"
#include "mixbound/tree.hpp"

namespace {

using namespace mixbound;

Kernel random_kernel(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Matrix k(m, m);
  for (std::size_t s = 0; s < m; ++s) {
    double sum = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      k(t, s) = unif(rng);
      sum += k(t, s);
    }
    for (std::size_t t = 0; t < m; ++t) k(t, s) /= sum;
  }
  return Kernel::validated(k, 1e-6);
}

ChainSpec random_chain(std::uint64_t seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> p0(m);
  double sum = 0.0;
  for (double& x : p0) {
    x = unif(rng);
    sum += x;
  }
  for (double& x : p0) x /= sum;
  std::vector<Kernel> ks;
  for (std::size_t t = 1; t < n; ++t) ks.push_back(random_kernel(rng, m));
  return ChainSpec::make(Alphabet::of_size(m), ProbVec::validated(std::move(p0), 1e-6),
                         std::move(ks));
}

void BM_DoeblinCoefficient(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto k = random_kernel(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(doeblin_coefficient(k));
}
BENCHMARK(BM_DoeblinCoefficient)->Arg(8)->Arg(32)->Arg(128);

void BM_ChainEtaExact(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto spec = random_chain(11, n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(chain_eta_exact(spec, 1, n));
}
BENCHMARK(BM_ChainEtaExact)->Arg(16)->Arg(64)->Arg(256);

void BM_OracleExactEta(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto spec = random_chain(13, n, 3);
  const auto table = enumerate_joint(ProcessSpec(spec));
  for (auto _ : state) benchmark::DoNotOptimize(exact_eta(table, 1, n));
}
BENCHMARK(BM_OracleExactEta)->Arg(6)->Arg(9);

void BM_PowerIteration(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  EtaMatrix eta(n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      eta.set(i, j, unif(rng), EtaProvenance::Bound);
  const auto m = build_matrices(eta);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_2_norm(m));
}
BENCHMARK(BM_PowerIteration)->Arg(16)->Arg(64)->Arg(256);

void BM_TreeLevelBound(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(23);
  TreeTopology topo;
  topo.n = n;
  for (std::size_t v = 2; v <= n; ++v)
    topo.edges.emplace_back(
        std::uniform_int_distribution<int>(1, static_cast<int>(v) - 1)(rng),
        static_cast<int>(v));
  std::vector<Kernel> ks;
  for (std::size_t e = 0; e + 1 < n; ++e) ks.push_back(random_kernel(rng, 3));
  std::vector<double> p0{0.3, 0.3, 0.4};
  auto renumbered = renumber_breadth_first(std::move(topo), Alphabet::of_size(3),
                                           ProbVec::validated(std::move(p0), 1e-6),
                                           std::move(ks));
  const TreeSpec& spec = renumbered.spec;
  for (auto _ : state)
    benchmark::DoNotOptimize(tree_eta_bound_levels(spec, 1, static_cast<int>(n)));
}
BENCHMARK(BM_TreeLevelBound)->Arg(63)->Arg(255);

void BM_SampleChain(benchmark::State& state) {
  const auto spec = random_chain(19, 100, 4);
  const ProcessSpec process(spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample(process, 42, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SampleChain)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
