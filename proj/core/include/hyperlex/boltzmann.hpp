#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hyperlex/metric.hpp"
#include "hyperlex/sparse.hpp"

namespace hyperlex {

/// Row-stochastic matrix M^P: each target's entropy row normalized into
/// a Boltzmann distribution over its observed contexts. Unobserved pairs
/// are structural zeros and are not stored. Stored entries are strictly
/// positive under relative normalization; raw-count entropies can spread
/// a row far enough that its softmax tail underflows to 0.
struct BoltzmannMatrix {
  std::shared_ptr<const SparseLayout> layout;
  std::vector<double> p;         // entry-parallel, in [0, 1]
  std::vector<double> z;         // per-target partition value
  std::vector<WordId> excluded;  // targets with empty rows

  std::span<const double> row(WordId target) const {
    return {p.data() + layout->row_offsets[target],
            static_cast<std::size_t>(layout->row_offsets[target + 1] -
                                     layout->row_offsets[target])};
  }
  /// P(target|context), 0 for unobserved pairs.
  double at(WordId target, WordId context) const {
    const std::size_t i = layout->find(target, context);
    return i == SparseLayout::npos ? 0.0 : p[i];
  }
};

/// Row softmax with per-row max shift; the shift cancels exactly, so the
/// result equals the unshifted definition wherever that is finite.
BoltzmannMatrix boltzmann_normalize(const EntropyTable& h);

struct MeanProfile {
  double x;  // mean of the word's row over observed contexts
  double y;  // mean of P(j|word) over targets j observing the word
};

/// Batch means for every word; x or y is NaN where the word has no
/// observed pair in that direction.
struct MeanProfileTable {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::uint32_t> row_support;  // l(w): nonzero entries in the row
  std::vector<std::uint32_t> col_support;

  bool defined(WordId word) const {
    return row_support[word] > 0 && col_support[word] > 0;
  }
};

MeanProfileTable mean_profiles(const BoltzmannMatrix& matrix);

/// Errors when the word lacks one direction, naming which.
MeanProfile mean_profile(const MeanProfileTable& table, WordId word);
MeanProfile mean_profile(const BoltzmannMatrix& matrix, WordId word);

}  // namespace hyperlex
