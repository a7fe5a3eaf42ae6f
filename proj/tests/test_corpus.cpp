#include <doctest.h>

#include <map>
#include <random>

#include "hyperlex/corpus.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

using namespace hyperlex;

namespace {

// Token-keyed view of the sparse table, for comparing against the oracle.
std::map<oracle::TokenPair, std::uint64_t> pair_map(const CountModel& model) {
  std::map<oracle::TokenPair, std::uint64_t> out;
  for (WordId target = 0; target < model.table.num_targets(); ++target) {
    for (const auto& entry : model.table.row(target)) {
      out[{model.vocab.token(target), model.vocab.token(entry.context)}] =
          entry.count;
    }
  }
  return out;
}

std::map<oracle::Token, std::uint64_t> unigram_map(const CountModel& model) {
  std::map<oracle::Token, std::uint64_t> out;
  for (WordId id = 0; id < model.vocab.size(); ++id) {
    out[model.vocab.token(id)] = model.vocab.frequency(id);
  }
  return out;
}

}  // namespace

TEST_CASE("three-token window example") {
  const Document tokens = {"a", "b", "a"};
  const CountModel model = count(tokens, 1, 1);
  CHECK(model.vocab.size() == 2);
  const WordId a = *model.vocab.find("a");
  const WordId b = *model.vocab.find("b");
  CHECK(model.vocab.frequency(a) == 2);
  CHECK(model.vocab.frequency(b) == 1);
  CHECK(model.table.pair_count(a, b) == 2);
  CHECK(model.table.pair_count(b, a) == 2);
  CHECK(model.table.pair_count(a, a) == 0);
  CHECK(model.vocab.total_tokens() == 3);
}

TEST_CASE("single token has no context") {
  const CountModel model = count(Document{"a"}, 4, 1);
  CHECK(model.vocab.size() == 1);
  CHECK(model.table.pair_entries() == 0);
  CHECK(model.vocab.frequency(0) == 1);
}

TEST_CASE("window zero is rejected") {
  CHECK_THROWS_AS(count(Document{"a", "b"}, 0, 1), Error);
  try {
    count(Document{"a", "b"}, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("min-count filter removes rare words entirely") {
  // "rare" appears once; it must not appear as target or context, but its
  // position still separates "left" and "right" beyond window 1.
  const Document tokens = {"left", "rare", "right", "left", "right",
                           "left", "right", "left", "right"};
  const CountModel model = count(tokens, 1, 2);
  CHECK(!model.vocab.find("rare").has_value());
  const WordId left = *model.vocab.find("left");
  const WordId right = *model.vocab.find("right");
  // Window 1 around position 0 ("left") only sees "rare": no pair there.
  CHECK(model.table.pair_count(left, right) == 6);
  CHECK(model.vocab.total_tokens() == 9);

  std::uint64_t freq_sum = 0;
  for (WordId id = 0; id < model.vocab.size(); ++id) {
    CHECK(model.vocab.frequency(id) >= 2);
    freq_sum += model.vocab.frequency(id);
  }
  CHECK(freq_sum <= model.vocab.total_tokens());
}

TEST_CASE("windows do not cross document boundaries") {
  const std::vector<Document> documents = {{"a", "b"}, {"b", "a"}};
  const CountModel model = count(documents, 3, 1);
  const WordId a = *model.vocab.find("a");
  const WordId b = *model.vocab.find("b");
  CHECK(model.table.pair_count(a, b) == 2);
  CHECK(model.table.pair_count(a, a) == 0);
  CHECK(model.table.pair_count(b, b) == 0);
}

TEST_CASE("twenty-token corpus matches the brute-force oracle") {
  const Document tokens = {"red",   "blue", "red",  "green", "blue",
                           "red",   "car",  "blue", "red",   "green",
                           "blue",  "red",  "sky",  "green", "red",
                           "blue",  "car",  "red",  "blue",  "green"};
  for (int window : {1, 2, 3}) {
    for (std::uint32_t min_count : {1u, 2u, 3u}) {
      CAPTURE(window);
      CAPTURE(min_count);
      const CountModel model = count(tokens, window, min_count);
      const oracle::Counts expected = oracle::count({tokens}, window, min_count);
      CHECK(pair_map(model) == expected.pairs);
      CHECK(unigram_map(model) == expected.unigrams);
      CHECK(model.vocab.total_tokens() == expected.total_tokens);
    }
  }
}

TEST_CASE("randomized corpora match the oracle") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 25; ++trial) {
    const auto documents = testutil::synthetic_documents(rng, 400, 12);
    std::uniform_int_distribution<int> window_dist(1, 4);
    std::uniform_int_distribution<std::uint32_t> min_count_dist(1, 3);
    const int window = window_dist(rng);
    const std::uint32_t min_count = min_count_dist(rng);
    CAPTURE(trial);
    const CountModel model = count(documents, window, min_count);
    const oracle::Counts expected = oracle::count(documents, window, min_count);
    CHECK(pair_map(model) == expected.pairs);
    CHECK(unigram_map(model) == expected.unigrams);
  }
}

TEST_CASE("pair counts are symmetric") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto documents = testutil::synthetic_documents(rng, 300, 10);
    const CountModel model = count(documents, 2, 1);
    for (WordId target = 0; target < model.table.num_targets(); ++target) {
      for (const auto& entry : model.table.row(target)) {
        CHECK(model.table.pair_count(entry.context, target) == entry.count);
      }
    }
  }
}

TEST_CASE("context totals and type counts are consistent") {
  std::mt19937 rng(11);
  const auto documents = testutil::synthetic_documents(rng, 500, 15);
  const CountModel model = count(documents, 3, 1);
  std::vector<std::uint64_t> totals(model.vocab.size(), 0);
  for (WordId target = 0; target < model.table.num_targets(); ++target) {
    std::uint32_t distinct = 0;
    WordId previous = kNoWord;
    for (const auto& entry : model.table.row(target)) {
      CHECK(entry.count > 0);
      if (previous != kNoWord) CHECK(entry.context > previous);
      previous = entry.context;
      ++distinct;
      totals[entry.context] += entry.count;
    }
    CHECK(model.table.context_type_count(target) == distinct);
  }
  for (WordId context = 0; context < model.vocab.size(); ++context) {
    CHECK(model.table.context_total(context) == totals[context]);
  }
}

TEST_CASE("epoch plan arithmetic") {
  const EpochPlan plan = split_epochs(2'500'000, 1'000'000);
  CHECK(plan.boundaries ==
        std::vector<std::uint64_t>{1'000'000, 2'000'000, 2'500'000});

  const EpochPlan tiny = split_epochs(10, 1'000'000);
  CHECK(tiny.boundaries == std::vector<std::uint64_t>{10});

  const EpochPlan exact = split_epochs(2'000'000, 1'000'000);
  CHECK(exact.boundaries == std::vector<std::uint64_t>{1'000'000, 2'000'000});

  CHECK(split_epochs(0, 5).boundaries.empty());
  CHECK_THROWS_AS(split_epochs(10, 0), Error);
}

TEST_CASE("cumulative epoch equals fresh count over the prefix") {
  std::mt19937 rng(23);
  const auto documents = testutil::synthetic_documents(rng, 600, 12);
  std::uint64_t total = 0;
  for (const auto& doc : documents) total += doc.size();
  const EpochPlan plan = split_epochs(total, total / 3 + 1);
  for (std::uint64_t boundary : plan.boundaries) {
    const CountModel prefix = count_prefix(documents, 2, 1, boundary);
    const oracle::Counts expected = oracle::count_prefix(documents, 2, 1, boundary);
    CHECK(pair_map(prefix) == expected.pairs);
    CHECK(unigram_map(prefix) == expected.unigrams);
    CHECK(prefix.vocab.total_tokens() == boundary);
  }
}

TEST_CASE("vocabulary near misses") {
  const CountModel model =
      count(Document{"red", "red", "bed", "reds", "reds", "blue"}, 1, 1);
  const auto suggestions = model.vocab.near_misses("red");
  std::vector<std::string> tokens;
  for (WordId id : suggestions) tokens.push_back(model.vocab.token(id));
  CHECK(std::find(tokens.begin(), tokens.end(), "bed") != tokens.end());
  CHECK(std::find(tokens.begin(), tokens.end(), "reds") != tokens.end());
  CHECK(std::find(tokens.begin(), tokens.end(), "blue") == tokens.end());
}
