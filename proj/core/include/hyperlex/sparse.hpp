#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hyperlex/corpus.hpp"

namespace hyperlex {

/// Row-major support pattern shared by every per-pair table derived from
/// one co-occurrence count: the entropy values, the Boltzmann rows and
/// the weights all align with the same (row_offsets, cols) arrays.
struct SparseLayout {
  std::vector<std::uint64_t> row_offsets;  // size rows + 1
  std::vector<WordId> cols;                // per row sorted ascending

  std::size_t rows() const noexcept {
    return row_offsets.empty() ? 0 : row_offsets.size() - 1;
  }
  std::size_t entries() const noexcept { return cols.size(); }

  std::span<const WordId> row_cols(WordId row) const {
    return {cols.data() + row_offsets[row],
            static_cast<std::size_t>(row_offsets[row + 1] - row_offsets[row])};
  }
  std::uint32_t row_size(WordId row) const {
    return static_cast<std::uint32_t>(row_offsets[row + 1] - row_offsets[row]);
  }

  /// Global entry index of (row, col), or npos when the pair is absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(WordId row, WordId col) const;
};

std::shared_ptr<const SparseLayout> make_layout(const CooccurrenceTable& table);

}  // namespace hyperlex
