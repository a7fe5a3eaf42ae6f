#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperlex/error.hpp"

namespace hyperlex {

using WordId = std::uint32_t;
inline constexpr WordId kNoWord = 0xFFFFFFFFu;

/// Token table with dense ids and unigram frequencies. Ids are assigned
/// by descending frequency, ties by token, so identical input always
/// yields an identical table. total_tokens() counts every token seen,
/// including those dropped by the min-count filter.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> tokens,
             std::vector<std::uint64_t> frequencies,
             std::uint64_t total_tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  const std::string& token(WordId id) const { return tokens_.at(id); }
  std::uint64_t frequency(WordId id) const { return frequencies_.at(id); }
  std::optional<WordId> find(std::string_view token) const;

  /// Vocabulary tokens within Levenshtein distance 1 of `token`,
  /// ascending by id. Used for unknown-token diagnostics.
  std::vector<WordId> near_misses(std::string_view token) const;

  bool operator==(const Vocabulary& other) const = default;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> frequencies_;
  std::unordered_map<std::string, WordId> index_;
  std::uint64_t total_tokens_ = 0;
};

/// Sparse symmetric-window co-occurrence counts in row-major form.
/// Rows are targets, entries within a row are sorted by context id.
/// Absent pairs mean count zero.
class CooccurrenceTable {
 public:
  struct Entry {
    WordId context;
    std::uint32_t count;
    bool operator==(const Entry&) const = default;
  };

  CooccurrenceTable() = default;
  CooccurrenceTable(int window, std::uint32_t min_count,
                    std::size_t num_targets, std::vector<std::uint64_t> row_offsets,
                    std::vector<Entry> entries);

  int window() const noexcept { return window_; }
  std::uint32_t min_count() const noexcept { return min_count_; }
  std::size_t num_targets() const noexcept {
    return row_offsets_.empty() ? 0 : row_offsets_.size() - 1;
  }
  std::uint64_t pair_entries() const noexcept { return entries_.size(); }
  std::uint64_t total_pair_mass() const noexcept { return total_mass_; }

  std::span<const Entry> row(WordId target) const;
  std::uint32_t pair_count(WordId target, WordId context) const;
  /// count(w_j) for the target: number of distinct context types observed.
  std::uint32_t context_type_count(WordId target) const;
  /// f(w_b) as co-occurrence mass: the column sum for the context word.
  std::uint64_t context_total(WordId context) const { return context_totals_.at(context); }

  bool operator==(const CooccurrenceTable& other) const {
    return window_ == other.window_ && min_count_ == other.min_count_ &&
           row_offsets_ == other.row_offsets_ && entries_ == other.entries_;
  }

 private:
  int window_ = 0;
  std::uint32_t min_count_ = 1;
  std::vector<std::uint64_t> row_offsets_;  // size num_targets + 1
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> context_totals_;
  std::uint64_t total_mass_ = 0;
};

struct CountModel {
  Vocabulary vocab;
  CooccurrenceTable table;
  bool operator==(const CountModel&) const = default;
};

struct EpochPlan {
  std::uint64_t epoch_size = 0;
  std::vector<std::uint64_t> boundaries;  // cumulative token offsets
  bool operator==(const EpochPlan&) const = default;
};

/// A document is one uninterrupted token sequence; context windows never
/// cross document boundaries.
using Document = std::vector<std::string>;

/// Lowercased maximal runs of Unicode letters. Digits and punctuation
/// separate tokens and are dropped; invalid UTF-8 bytes decode to
/// U+FFFD which is a separator as well.
std::vector<std::string> tokenize(std::string_view utf8_text);

/// Counts unigrams and windowed co-occurrences over the documents.
/// Tokens below min_count keep their positions (they still separate
/// other words by distance) but contribute no pairs in either role.
CountModel count(std::span<const Document> documents, int window,
                 std::uint32_t min_count);
CountModel count(const Document& tokens, int window, std::uint32_t min_count);

/// Same, but only the first `token_limit` tokens of the concatenated
/// stream take part; the cut behaves like a sequence end.
CountModel count_prefix(std::span<const Document> documents, int window,
                        std::uint32_t min_count, std::uint64_t token_limit);

EpochPlan split_epochs(std::uint64_t total_tokens, std::uint64_t epoch_size);

/// Model-file container: magic "HYPXM1", meta lines, vocabulary and
/// pairs sections, then a length-and-checksum trailer. Output is fully
/// deterministic; load(save(x)) == x and a re-save is byte-identical.
void save_model(const std::string& path, const CountModel& model);
CountModel load_model(const std::string& path);

std::string serialize_model(const CountModel& model);
CountModel parse_model(std::string_view content);

}  // namespace hyperlex
