#include "hyperlex/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperlex/detail/parallel.hpp"
#include "hyperlex/error.hpp"

namespace hyperlex {

OverlapScores overlap_scores(const BoltzmannMatrix& matrix, WordId target) {
  const SparseLayout& layout = *matrix.layout;
  const std::size_t n = layout.rows();
  if (target >= n) {
    fail(Errc::MissingWord, "target id out of range: " + std::to_string(target));
  }
  const std::uint32_t l_target = layout.row_size(target);
  if (l_target < 2) {
    fail(Errc::Domain, "target has insufficient context support: l(target) = " +
                           std::to_string(l_target));
  }

  std::vector<std::uint8_t> in_target_support(n, 0);
  for (WordId context : layout.row_cols(target)) in_target_support[context] = 1;
  const double log_l_target = std::log(static_cast<double>(l_target));

  OverlapScores scores;
  scores.target = target;
  scores.l_target = l_target;

  std::vector<std::vector<OverlapCandidate>> partial(detail::worker_count());
  detail::parallel_chunks(n, [&](std::size_t begin, std::size_t end,
                                 std::size_t worker) {
    auto& local = partial[worker % partial.size()];
    for (std::size_t word = begin; word < end; ++word) {
      const std::uint32_t l_word = layout.row_size(static_cast<WordId>(word));
      if (l_word < 2) continue;
      std::uint32_t l_common = 0;
      for (WordId context : layout.row_cols(static_cast<WordId>(word))) {
        l_common += in_target_support[context];
      }
      if (l_common == 0) continue;
      const double log_common = std::log(static_cast<double>(l_common));
      const double overlap =
          (log_common * log_common) /
          (std::log(static_cast<double>(l_word)) * log_l_target);
      local.push_back({static_cast<WordId>(word), l_word, l_common, overlap});
    }
  });
  for (auto& local : partial) {
    scores.candidates.insert(scores.candidates.end(), local.begin(), local.end());
  }
  // Chunks are contiguous and processed in order, so candidates are
  // already ascending by word id; keep that contract explicit.
  std::sort(scores.candidates.begin(), scores.candidates.end(),
            [](const OverlapCandidate& a, const OverlapCandidate& b) {
              return a.word < b.word;
            });
  return scores;
}

namespace {

struct NeighborOrder {
  WordId target;
  bool operator()(const RankedNeighbor& a, const RankedNeighbor& b) const {
    if (a.score != b.score) return a.score > b.score;
    if (a.l_common != b.l_common) return a.l_common > b.l_common;
    const bool a_is_target = a.word == target;
    const bool b_is_target = b.word == target;
    if (a_is_target != b_is_target) return a_is_target;
    return a.word < b.word;
  }
};

std::vector<RankedNeighbor> take_top_k(std::vector<RankedNeighbor> ranked,
                                       std::size_t k, WordId target) {
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    NeighborOrder{target});
  ranked.resize(keep);
  return ranked;
}

}  // namespace

std::vector<RankedNeighbor> strategy1(const OverlapScores& scores, std::size_t k) {
  if (k < 1) fail(Errc::InvalidArgument, "k must be >= 1");
  std::vector<RankedNeighbor> ranked;
  ranked.reserve(scores.candidates.size());
  for (const OverlapCandidate& c : scores.candidates) {
    ranked.push_back({c.word, c.overlap, c.l_common, c.overlap});
  }
  return take_top_k(std::move(ranked), k, scores.target);
}

Strategy2Result strategy2(const OverlapScores& scores, std::size_t k) {
  if (k < 1) fail(Errc::InvalidArgument, "k must be >= 1");
  Strategy2Result result;
  for (const OverlapCandidate& c : scores.candidates) {
    result.sum_overlap += c.overlap;
    result.max_overlap = std::max(result.max_overlap, c.overlap);
  }
  if (result.sum_overlap <= 0.0) {
    fail(Errc::Degenerate, "no candidate with positive overlap score");
  }
  const double denominator = std::log(result.sum_overlap * result.max_overlap);
  if (denominator == 0.0) {
    fail(Errc::Degenerate,
         "degenerate extraction denominator: ln(sum(L) * max(L)) = 0 with sum(L) = " +
             std::to_string(result.sum_overlap) + ", max(L) = " +
             std::to_string(result.max_overlap));
  }
  result.denominator_negative = denominator < 0.0;

  std::vector<RankedNeighbor> ranked;
  ranked.reserve(scores.candidates.size());
  for (const OverlapCandidate& c : scores.candidates) {
    if (c.overlap <= 0.0) continue;
    ranked.push_back(
        {c.word, c.overlap, c.l_common, std::log(c.overlap) / denominator});
  }
  result.neighbors = take_top_k(std::move(ranked), k, scores.target);
  return result;
}

std::vector<RankedNeighbor> closest(std::span<const RankedNeighbor> s1,
                                    std::span<const RankedNeighbor> s2) {
  std::vector<RankedNeighbor> out;
  for (const RankedNeighbor& candidate : s1) {
    const bool in_s2 =
        std::any_of(s2.begin(), s2.end(), [&](const RankedNeighbor& other) {
          return other.word == candidate.word;
        });
    if (in_s2) out.push_back(candidate);
  }
  return out;
}

NeighborReport neighbor_report(const BoltzmannMatrix& matrix, WordId target,
                               std::size_t k) {
  const OverlapScores scores = overlap_scores(matrix, target);
  NeighborReport report;
  report.target = target;
  report.k = k;
  report.strategy1 = strategy1(scores, k);
  Strategy2Result second = strategy2(scores, k);
  report.strategy2 = std::move(second.neighbors);
  report.sum_overlap = second.sum_overlap;
  report.max_overlap = second.max_overlap;
  report.denominator_negative = second.denominator_negative;
  report.closest = closest(report.strategy1, report.strategy2);
  return report;
}

}  // namespace hyperlex
