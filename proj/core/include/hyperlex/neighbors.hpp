#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperlex/boltzmann.hpp"

namespace hyperlex {

/// Common-context overlap for one candidate against the fixed target:
/// l_word counts the candidate's nonzero Boltzmann entries, l_common the
/// context types shared with the target, overlap the score
/// (ln l_common)^2 / (ln l_word * ln l_target).
struct OverlapCandidate {
  WordId word;
  std::uint32_t l_word;
  std::uint32_t l_common;
  double overlap;
};

struct OverlapScores {
  WordId target;
  std::uint32_t l_target;
  std::vector<OverlapCandidate> candidates;  // ascending word id
};

/// All eligible candidates for the target. Candidates need l(w) >= 2
/// (a singleton support makes the denominator log vanish) and at least
/// one shared context; the target itself is always a candidate with
/// overlap exactly 1. Errors when l(target) < 2.
OverlapScores overlap_scores(const BoltzmannMatrix& matrix, WordId target);

struct RankedNeighbor {
  WordId word;
  double overlap;          // L
  std::uint32_t l_common;
  double score;            // ordering key: L for strategy 1, s for strategy 2
};

/// Top-k by overlap descending. Ties break by larger l_common, then the
/// target itself, then smaller word id.
std::vector<RankedNeighbor> strategy1(const OverlapScores& scores, std::size_t k);

struct Strategy2Result {
  std::vector<RankedNeighbor> neighbors;
  double sum_overlap = 0.0;
  double max_overlap = 0.0;
  bool denominator_negative = false;
};

/// Top-k by s = ln L / ln(sum(L) * max(L)) descending, over candidates
/// with L > 0. When the log denominator is negative this ordering
/// inverts relative to L; the sign is surfaced in the result. A zero
/// denominator is a hard degenerate error.
Strategy2Result strategy2(const OverlapScores& scores, std::size_t k);

/// Set intersection of the two lists, emitted in strategy-1 order.
std::vector<RankedNeighbor> closest(std::span<const RankedNeighbor> s1,
                                    std::span<const RankedNeighbor> s2);

struct NeighborReport {
  WordId target = 0;
  std::size_t k = 0;
  std::vector<RankedNeighbor> strategy1;
  std::vector<RankedNeighbor> strategy2;
  std::vector<RankedNeighbor> closest;
  double sum_overlap = 0.0;
  double max_overlap = 0.0;
  bool denominator_negative = false;
};

NeighborReport neighbor_report(const BoltzmannMatrix& matrix, WordId target,
                               std::size_t k);

}  // namespace hyperlex
