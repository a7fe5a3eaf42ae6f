#include "hyperlex/baseline.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "hyperlex/error.hpp"

namespace hyperlex {

VectorTable::VectorTable(std::size_t dimension, std::vector<std::string> tokens,
                         std::vector<std::vector<double>> vectors)
    : dimension_(dimension), tokens_(std::move(tokens)), vectors_(std::move(vectors)) {
  if (tokens_.size() != vectors_.size()) {
    fail(Errc::Internal, "vector table token/vector size mismatch");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_[tokens_[i]] = i;  // later duplicates win
  }
}

bool VectorTable::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

std::span<const double> VectorTable::vector_for(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    fail(Errc::MissingWord, "token not in vector table: " + std::string(token));
  }
  return vectors_[it->second];
}

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_float_field(std::string_view field, std::size_t line_number) {
  double value = 0.0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    fail(Errc::ParseError, "line " + std::to_string(line_number) +
                               ": non-numeric field '" + std::string(field) + "'");
  }
  return value;
}

bool is_count_dimension_header(const std::vector<std::string_view>& fields) {
  if (fields.size() != 2) return false;
  for (const auto& field : fields) {
    for (char c : field) {
      if (c < '0' || c > '9') return false;
    }
  }
  return true;
}

}  // namespace

VectorTable parse_vectors(std::string_view content,
                          std::vector<std::string>* warnings) {
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> vectors;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t dimension = 0;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  bool first_content_line = true;

  while (pos <= content.size()) {
    const std::size_t eol = content.find('\n', pos);
    const std::string_view line = content.substr(
        pos, (eol == std::string_view::npos ? content.size() : eol) - pos);
    pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
    ++line_number;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;

    if (first_content_line && is_count_dimension_header(fields)) {
      first_content_line = false;
      continue;  // "count dimension" header carries no payload we need
    }
    first_content_line = false;

    if (fields.size() < 2) {
      fail(Errc::ParseError,
           "line " + std::to_string(line_number) + ": expected token and vector");
    }
    if (dimension == 0) {
      dimension = fields.size() - 1;
    } else if (fields.size() - 1 != dimension) {
      fail(Errc::ParseError, "line " + std::to_string(line_number) +
                                 ": ragged row, expected " + std::to_string(dimension) +
                                 " values, got " + std::to_string(fields.size() - 1));
    }
    std::vector<double> vector(dimension);
    double norm_squared = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
      vector[i] = parse_float_field(fields[i + 1], line_number);
      norm_squared += vector[i] * vector[i];
    }
    if (norm_squared == 0.0) {
      fail(Errc::ParseError,
           "line " + std::to_string(line_number) + ": zero vector for token '" +
               std::string(fields[0]) + "'");
    }
    std::string token(fields[0]);
    const auto existing = seen.find(token);
    if (existing != seen.end()) {
      if (warnings) {
        warnings->push_back("duplicate token '" + token + "' at line " +
                            std::to_string(line_number) + ", last occurrence wins");
      }
      vectors[existing->second] = std::move(vector);
    } else {
      seen.emplace(token, tokens.size());
      tokens.push_back(std::move(token));
      vectors.push_back(std::move(vector));
    }
  }

  if (tokens.empty()) {
    fail(Errc::ParseError, "no vector rows found");
  }
  return VectorTable(dimension, std::move(tokens), std::move(vectors));
}

VectorTable load_vectors(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open vector file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::Io, "read failed: " + path);
  return parse_vectors(content, warnings);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    fail(Errc::InvalidArgument, "cosine of vectors with different dimensions");
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    fail(Errc::Domain, "cosine undefined for zero vector");
  }
  return dot / (std::sqrt(uu) * std::sqrt(vv));
}

std::vector<ScoredToken> cosine_neighbors(const VectorTable& table,
                                          std::string_view target, std::size_t k) {
  if (k < 1) fail(Errc::InvalidArgument, "k must be >= 1");
  const auto target_vector = table.vector_for(target);  // throws if unknown

  std::vector<ScoredToken> scored;
  scored.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    scored.push_back({table.token(i), cosine(target_vector, table.vector(i))});
  }
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [&](const ScoredToken& a, const ScoredToken& b) {
                      const bool a_is_target = a.token == target;
                      const bool b_is_target = b.token == target;
                      if (a_is_target != b_is_target) return a_is_target;
                      if (a.cosine != b.cosine) return a.cosine > b.cosine;
                      return a.token < b.token;
                    });
  scored.resize(keep);
  return scored;
}

ComparisonMetrics compare_reports(std::span<const std::string> entropy_list,
                                  std::span<const std::string> baseline_list,
                                  std::span<const std::string> gold) {
  const std::set<std::string> entropy_set(entropy_list.begin(), entropy_list.end());
  const std::set<std::string> baseline_set(baseline_list.begin(), baseline_list.end());
  const std::set<std::string> gold_set(gold.begin(), gold.end());

  ComparisonMetrics metrics;
  for (const auto& word : entropy_set) {
    if (gold_set.count(word)) ++metrics.entropy_gold_hits;
  }
  for (const auto& word : baseline_set) {
    if (gold_set.count(word)) ++metrics.baseline_gold_hits;
  }
  std::size_t intersection = 0;
  for (const auto& word : entropy_set) {
    if (baseline_set.count(word)) ++intersection;
  }
  const std::size_t union_size =
      entropy_set.size() + baseline_set.size() - intersection;
  metrics.jaccard = union_size == 0
                        ? 0.0
                        : static_cast<double>(intersection) /
                              static_cast<double>(union_size);
  return metrics;
}

}  // namespace hyperlex
