#include <doctest.h>

#include <random>

#include "pipeline_check.hpp"

TEST_CASE("pipeline matches the brute-force oracle on random corpora") {
  std::mt19937 rng(20250115);
  std::uniform_int_distribution<int> window_dist(1, 4);
  std::uniform_int_distribution<std::uint32_t> min_count_dist(1, 3);
  std::uniform_int_distribution<std::size_t> k_dist(1, 25);
  for (int trial = 0; trial < 30; ++trial) {
    const auto documents = testutil::synthetic_documents(rng, 700, 25);
    const auto result = pipeline_check::run(documents, window_dist(rng),
                                            min_count_dist(rng), k_dist(rng));
    CAPTURE(trial);
    CAPTURE(result.what);
    CHECK(!result.failed);
  }
}
