#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hyperlex/corpus.hpp"
#include "hyperlex/sparse.hpp"

namespace hyperlex {

/// How f(w_a, w_b) enters the entropy formula: the bare pair count, or
/// the count divided by the total pair mass. Relative is the default;
/// raw counts grow with the corpus and push the downstream softmax into
/// saturation.
enum class Normalization { Relative, Raw };

const char* normalization_name(Normalization n);

/// Per-target collocation diversity d, per-pair conditional-probability
/// rank r and combined weight q = d / (r + 1). Ranks and weights are
/// stored entry-parallel to the layout.
struct WeightComponents {
  std::shared_ptr<const SparseLayout> layout;
  std::vector<double> d;            // per target; unset for excluded rows
  std::vector<std::uint32_t> rank;  // per pair, 0 = highest conditional
  std::vector<double> q;            // per pair, > 0
  std::vector<WordId> excluded;     // targets with no observed context
};

/// d[a] = f(a) / |distinct contexts of a|. Targets without any observed
/// context are left out and reported via `excluded`.
std::vector<double> collocation_diversity(const CooccurrenceTable& table,
                                          const Vocabulary& vocab,
                                          std::vector<WordId>* excluded = nullptr);

/// Competition rank of f(a|b) among target a's observed contexts,
/// descending: the largest conditional gets 0, ties share the smallest
/// applicable rank, the next distinct value gets the number of strictly
/// greater entries. Comparisons are exact (integer cross products).
std::vector<std::uint32_t> conditional_rank(const CooccurrenceTable& table,
                                            const SparseLayout& layout);

WeightComponents compute_weights(const CooccurrenceTable& table,
                                 const Vocabulary& vocab);

/// Weighted conditional entropy, defined exactly on the observed pairs.
struct EntropyTable {
  std::shared_ptr<const SparseLayout> layout;
  std::vector<double> h;  // entry-parallel
  Normalization normalization = Normalization::Relative;
};

/// H[a][b] = -q * F * ln(q * f(a|b)) with F per the normalization mode.
/// The log argument may exceed 1 (negative H); no clamping anywhere.
/// A non-finite result is a hard error naming the offending pair.
EntropyTable weighted_entropy(const CooccurrenceTable& table,
                              const WeightComponents& weights,
                              Normalization normalization);

}  // namespace hyperlex
