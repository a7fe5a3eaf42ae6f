#include "hyperlex/sparse.hpp"

#include <algorithm>

namespace hyperlex {

std::size_t SparseLayout::find(WordId row, WordId col) const {
  const auto cols_span = row_cols(row);
  const auto it = std::lower_bound(cols_span.begin(), cols_span.end(), col);
  if (it == cols_span.end() || *it != col) return npos;
  return static_cast<std::size_t>(row_offsets[row] +
                                  (it - cols_span.begin()));
}

std::shared_ptr<const SparseLayout> make_layout(const CooccurrenceTable& table) {
  auto layout = std::make_shared<SparseLayout>();
  const std::size_t n = table.num_targets();
  layout->row_offsets.resize(n + 1, 0);
  layout->cols.reserve(table.pair_entries());
  for (WordId target = 0; target < n; ++target) {
    for (const auto& entry : table.row(target)) {
      layout->cols.push_back(entry.context);
    }
    layout->row_offsets[target + 1] = layout->cols.size();
  }
  return layout;
}

}  // namespace hyperlex
