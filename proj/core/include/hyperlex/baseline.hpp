#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hyperlex {

/// Externally trained word vectors in the common textual format: an
/// optional "count dimension" header line, then one token plus
/// `dimension` decimal floats per line.
class VectorTable {
 public:
  VectorTable(std::size_t dimension, std::vector<std::string> tokens,
              std::vector<std::vector<double>> vectors);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  std::span<const double> vector(std::size_t i) const { return vectors_.at(i); }
  bool contains(std::string_view token) const;
  std::span<const double> vector_for(std::string_view token) const;

 private:
  std::size_t dimension_;
  std::vector<std::string> tokens_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Warnings (duplicate tokens, for now) are appended to *warnings when
/// provided. Ragged rows, non-numeric fields and zero vectors are parse
/// errors carrying the offending line number.
VectorTable load_vectors(const std::string& path,
                         std::vector<std::string>* warnings = nullptr);
VectorTable parse_vectors(std::string_view content,
                          std::vector<std::string>* warnings = nullptr);

double cosine(std::span<const double> u, std::span<const double> v);

struct ScoredToken {
  std::string token;
  double cosine;
};

/// Top-k tokens by cosine similarity, the target first (cosine 1 with
/// itself); ties by token order.
std::vector<ScoredToken> cosine_neighbors(const VectorTable& table,
                                          std::string_view target,
                                          std::size_t k);

struct ComparisonMetrics {
  std::size_t entropy_gold_hits = 0;
  std::size_t baseline_gold_hits = 0;
  double jaccard = 0.0;
};

/// Gold-set hits for each method's list plus Jaccard overlap between the
/// two lists as sets. Order-insensitive.
ComparisonMetrics compare_reports(std::span<const std::string> entropy_list,
                                  std::span<const std::string> baseline_list,
                                  std::span<const std::string> gold);

}  // namespace hyperlex
