#include "hyperlex/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperlex/detail/parallel.hpp"
#include "hyperlex/error.hpp"

namespace hyperlex {

BoltzmannMatrix boltzmann_normalize(const EntropyTable& h) {
  BoltzmannMatrix matrix;
  matrix.layout = h.layout;
  matrix.p.resize(h.h.size());
  const std::size_t n = matrix.layout->rows();
  matrix.z.assign(n, std::numeric_limits<double>::quiet_NaN());

  detail::parallel_chunks(n, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t target = begin; target < end; ++target) {
      const std::uint64_t lo = matrix.layout->row_offsets[target];
      const std::uint64_t hi = matrix.layout->row_offsets[target + 1];
      if (lo == hi) continue;
      double max_h = -std::numeric_limits<double>::infinity();
      for (std::uint64_t i = lo; i < hi; ++i) max_h = std::max(max_h, h.h[i]);
      double sum = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        matrix.p[i] = std::exp(h.h[i] - max_h);
        sum += matrix.p[i];
      }
      const double inv = 1.0 / sum;
      for (std::uint64_t i = lo; i < hi; ++i) matrix.p[i] *= inv;
      matrix.z[target] = std::exp(max_h) * sum;
    }
  });

  for (WordId target = 0; target < n; ++target) {
    if (matrix.layout->row_size(target) == 0) matrix.excluded.push_back(target);
  }
  return matrix;
}

MeanProfileTable mean_profiles(const BoltzmannMatrix& matrix) {
  const std::size_t n = matrix.layout->rows();
  MeanProfileTable table;
  table.x.assign(n, std::numeric_limits<double>::quiet_NaN());
  table.y.assign(n, std::numeric_limits<double>::quiet_NaN());
  table.row_support.assign(n, 0);
  table.col_support.assign(n, 0);

  detail::parallel_chunks(n, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t target = begin; target < end; ++target) {
      const auto row = matrix.row(static_cast<WordId>(target));
      table.row_support[target] = static_cast<std::uint32_t>(row.size());
      if (row.empty()) continue;
      double sum = 0.0;
      for (double value : row) sum += value;
      table.x[target] = sum / static_cast<double>(row.size());
    }
  });

  // Column pass stays sequential in row order so the float accumulation
  // order does not depend on the worker count.
  std::vector<double> column_sums(n, 0.0);
  for (WordId target = 0; target < n; ++target) {
    const auto cols = matrix.layout->row_cols(target);
    const auto row = matrix.row(target);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      column_sums[cols[i]] += row[i];
      ++table.col_support[cols[i]];
    }
  }
  for (WordId word = 0; word < n; ++word) {
    if (table.col_support[word] > 0) {
      table.y[word] = column_sums[word] / static_cast<double>(table.col_support[word]);
    }
  }
  return table;
}

MeanProfile mean_profile(const MeanProfileTable& table, WordId word) {
  const bool has_row = table.row_support[word] > 0;
  const bool has_col = table.col_support[word] > 0;
  if (!has_row && !has_col) {
    fail(Errc::MissingWord, "word " + std::to_string(word) +
                                " has no observed pair as target or as context");
  }
  if (!has_row) {
    fail(Errc::MissingWord,
         "word " + std::to_string(word) + " has no observed pair as target");
  }
  if (!has_col) {
    fail(Errc::MissingWord,
         "word " + std::to_string(word) + " has no observed pair as context");
  }
  return {table.x[word], table.y[word]};
}

MeanProfile mean_profile(const BoltzmannMatrix& matrix, WordId word) {
  return mean_profile(mean_profiles(matrix), word);
}

}  // namespace hyperlex
