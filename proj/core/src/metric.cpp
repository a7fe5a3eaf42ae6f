#include "hyperlex/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hyperlex/detail/parallel.hpp"

namespace hyperlex {

const char* normalization_name(Normalization n) {
  return n == Normalization::Relative ? "relative" : "raw";
}

std::vector<double> collocation_diversity(const CooccurrenceTable& table,
                                          const Vocabulary& vocab,
                                          std::vector<WordId>* excluded) {
  const std::size_t n = table.num_targets();
  std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
  for (WordId target = 0; target < n; ++target) {
    const std::uint32_t types = table.context_type_count(target);
    if (types == 0) {
      if (excluded) excluded->push_back(target);
      continue;
    }
    d[target] = static_cast<double>(vocab.frequency(target)) /
                static_cast<double>(types);
  }
  return d;
}

namespace {

// f(a|b) = count(a,b) / context_total(b); compared exactly via integer
// cross products so ties rank identically on every platform.
struct Conditional {
  std::uint32_t count;
  std::uint64_t total;
};

bool greater_conditional(const Conditional& x, const Conditional& y) {
  return static_cast<unsigned __int128>(x.count) * y.total >
         static_cast<unsigned __int128>(y.count) * x.total;
}

bool equal_conditional(const Conditional& x, const Conditional& y) {
  return static_cast<unsigned __int128>(x.count) * y.total ==
         static_cast<unsigned __int128>(y.count) * x.total;
}

}  // namespace

std::vector<std::uint32_t> conditional_rank(const CooccurrenceTable& table,
                                            const SparseLayout& layout) {
  const std::size_t n = table.num_targets();
  std::vector<std::uint32_t> rank(layout.entries(), 0);
  detail::parallel_chunks(n, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<std::uint32_t> order;
    std::vector<Conditional> conds;
    for (std::size_t target = begin; target < end; ++target) {
      const auto row = table.row(static_cast<WordId>(target));
      if (row.empty()) continue;
      conds.resize(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) {
        conds[i] = {row[i].count, table.context_total(row[i].context)};
      }
      order.resize(row.size());
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (greater_conditional(conds[a], conds[b])) return true;
        if (greater_conditional(conds[b], conds[a])) return false;
        return a < b;
      });
      const std::uint64_t base = layout.row_offsets[target];
      std::uint32_t current_rank = 0;
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        if (pos > 0 && !equal_conditional(conds[order[pos]], conds[order[pos - 1]])) {
          current_rank = static_cast<std::uint32_t>(pos);
        }
        rank[base + order[pos]] = current_rank;
      }
    }
  });
  return rank;
}

WeightComponents compute_weights(const CooccurrenceTable& table,
                                 const Vocabulary& vocab) {
  WeightComponents weights;
  weights.layout = make_layout(table);
  weights.d = collocation_diversity(table, vocab, &weights.excluded);
  weights.rank = conditional_rank(table, *weights.layout);
  weights.q.resize(weights.layout->entries());
  const std::size_t n = table.num_targets();
  for (WordId target = 0; target < n; ++target) {
    const std::uint64_t begin = weights.layout->row_offsets[target];
    const std::uint64_t end = weights.layout->row_offsets[target + 1];
    for (std::uint64_t i = begin; i < end; ++i) {
      weights.q[i] = weights.d[target] / (weights.rank[i] + 1.0);
    }
  }
  return weights;
}

EntropyTable weighted_entropy(const CooccurrenceTable& table,
                              const WeightComponents& weights,
                              Normalization normalization) {
  EntropyTable result;
  result.layout = weights.layout;
  result.normalization = normalization;
  result.h.resize(result.layout->entries());
  const double total_mass = static_cast<double>(table.total_pair_mass());
  const std::size_t n = table.num_targets();

  struct Offender {
    bool found = false;
    WordId target = 0;
    WordId context = 0;
  };
  std::vector<Offender> offenders(detail::worker_count());

  detail::parallel_chunks(n, [&](std::size_t begin, std::size_t end,
                                 std::size_t worker) {
    Offender& offender = offenders[worker % offenders.size()];
    for (std::size_t target = begin; target < end; ++target) {
      const auto row = table.row(static_cast<WordId>(target));
      const std::uint64_t base = result.layout->row_offsets[target];
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double q = weights.q[base + i];
        const double conditional =
            static_cast<double>(row[i].count) /
            static_cast<double>(table.context_total(row[i].context));
        const double mass = normalization == Normalization::Relative
                                ? static_cast<double>(row[i].count) / total_mass
                                : static_cast<double>(row[i].count);
        const double value = -q * mass * std::log(q * conditional);
        if (!std::isfinite(value) && !offender.found) {
          offender = {true, static_cast<WordId>(target), row[i].context};
        }
        result.h[base + i] = value;
      }
    }
  });

  for (const auto& offender : offenders) {
    if (offender.found) {
      fail(Errc::NonFinite,
           "non-finite entropy for pair (" + std::to_string(offender.target) +
               ", " + std::to_string(offender.context) + ")");
    }
  }
  return result;
}

}  // namespace hyperlex
