#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "hyperlex/corpus.hpp"

namespace {

// Letter-only word forms; digits would be dropped by the tokenizer.
std::string letter_word(int i) {
  std::string word;
  for (++i; i > 0; i /= 26) word += static_cast<char>('a' + i % 26);
  return word;
}

// Zipf-ish synthetic text, deterministic per size.
std::string synthetic_text(std::size_t tokens) {
  std::mt19937 rng(42);
  std::vector<std::string> vocabulary;
  for (int i = 0; i < 5000; ++i) vocabulary.push_back(letter_word(i));
  std::vector<double> weights(vocabulary.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / (1.0 + i);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::ostringstream out;
  for (std::size_t i = 0; i < tokens; ++i) {
    out << vocabulary[pick(rng)] << (i % 13 == 12 ? ".\n" : " ");
  }
  return out.str();
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = synthetic_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto tokens = hyperlex::tokenize(text);
    benchmark::DoNotOptimize(tokens);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(10'000)->Arg(100'000);

void BM_Count(benchmark::State& state) {
  const hyperlex::Document tokens =
      hyperlex::tokenize(synthetic_text(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    auto model = hyperlex::count(tokens, 3, 5);
    benchmark::DoNotOptimize(model);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          state.range(0));
}
BENCHMARK(BM_Count)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_SerializeModel(benchmark::State& state) {
  const hyperlex::Document tokens =
      hyperlex::tokenize(synthetic_text(static_cast<std::size_t>(state.range(0))));
  const auto model = hyperlex::count(tokens, 3, 5);
  for (auto _ : state) {
    auto bytes = hyperlex::serialize_model(model);
    benchmark::DoNotOptimize(bytes);
  }
}
BENCHMARK(BM_SerializeModel)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
