#include <benchmark/benchmark.h>

#include <vector>

#include "pkt/affinity.hpp"
#include "pkt/divergence.hpp"
#include "pkt/retrieval.hpp"
#include "pkt/rng.hpp"
#include "pkt/student.hpp"

namespace {

pkt::FeatureMatrix random_features(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
  pkt::Rng rng(seed);
  pkt::FeatureMatrix x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x;
}

void BM_ConditionalProbabilities(benchmark::State& state) {
  const auto x = random_features(1, state.range(0), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pkt::conditional_probabilities(x, pkt::KernelSpec::cosine()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConditionalProbabilities)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_LossAndGrad(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = pkt::conditional_probabilities(random_features(2, n, 128),
                                                pkt::KernelSpec::cosine());
  const auto y = random_features(3, n, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pkt::pkt_loss_and_grad(y, p, pkt::KernelSpec::cosine()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LossAndGrad)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_ForwardBackward(benchmark::State& state) {
  const auto model = pkt::StudentModel::glorot({256, 128, 32}, 4);
  const auto x = random_features(5, state.range(0), 256);
  const auto g = random_features(6, state.range(0), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pkt::forward(model, x));
    benchmark::DoNotOptimize(pkt::backward(model, x, g));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(64)->Arg(128)->Arg(256);

void BM_Evaluate(benchmark::State& state) {
  const auto n_db = state.range(0);
  const auto db = random_features(7, n_db, 32);
  const auto q = random_features(8, 100, 32);
  std::vector<int> dl(static_cast<std::size_t>(n_db)), ql(100);
  for (std::size_t i = 0; i < dl.size(); ++i) dl[i] = static_cast<int>(i % 10);
  for (std::size_t i = 0; i < ql.size(); ++i) ql[i] = static_cast<int>(i % 10);
  const pkt::RetrievalIndex index(db, dl);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pkt::evaluate(index, q, ql, std::vector<std::size_t>{100}));
  }
}
BENCHMARK(BM_Evaluate)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
