#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "hyperlex/boltzmann.hpp"
#include "hyperlex/disk.hpp"
#include "hyperlex/metric.hpp"
#include "hyperlex/neighbors.hpp"

namespace {

hyperlex::CountModel counted_fixture(std::size_t tokens) {
  std::mt19937 rng(7);
  std::vector<std::string> vocabulary;
  for (int i = 0; i < 2000; ++i) vocabulary.push_back("w" + std::to_string(i));
  std::vector<double> weights(vocabulary.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / (1.0 + i);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  hyperlex::Document doc;
  doc.reserve(tokens);
  for (std::size_t i = 0; i < tokens; ++i) doc.push_back(vocabulary[pick(rng)]);
  return hyperlex::count(doc, 3, 5);
}

void BM_WeightsAndEntropy(benchmark::State& state) {
  const auto model = counted_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto weights = hyperlex::compute_weights(model.table, model.vocab);
    auto entropy = hyperlex::weighted_entropy(model.table, weights,
                                              hyperlex::Normalization::Relative);
    benchmark::DoNotOptimize(entropy);
  }
}
BENCHMARK(BM_WeightsAndEntropy)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_BoltzmannNormalize(benchmark::State& state) {
  const auto model = counted_fixture(static_cast<std::size_t>(state.range(0)));
  const auto weights = hyperlex::compute_weights(model.table, model.vocab);
  const auto entropy = hyperlex::weighted_entropy(
      model.table, weights, hyperlex::Normalization::Relative);
  for (auto _ : state) {
    auto matrix = hyperlex::boltzmann_normalize(entropy);
    benchmark::DoNotOptimize(matrix);
  }
}
BENCHMARK(BM_BoltzmannNormalize)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_NeighborQuery(benchmark::State& state) {
  const auto model = counted_fixture(static_cast<std::size_t>(state.range(0)));
  const auto weights = hyperlex::compute_weights(model.table, model.vocab);
  const auto matrix = hyperlex::boltzmann_normalize(hyperlex::weighted_entropy(
      model.table, weights, hyperlex::Normalization::Relative));
  for (auto _ : state) {
    auto report = hyperlex::neighbor_report(matrix, 0, 22);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_NeighborQuery)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
