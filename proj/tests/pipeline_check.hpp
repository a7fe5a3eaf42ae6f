// Full-pipeline equivalence check against the dense oracle: counts,
// weights, entropy, Boltzmann rows, overlap scores, strategy lists and
// disk coordinates. Counts, ranks and list contents must match exactly;
// reals within 1e-12 relative error.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperlex/boltzmann.hpp"
#include "hyperlex/corpus.hpp"
#include "hyperlex/disk.hpp"
#include "hyperlex/metric.hpp"
#include "hyperlex/neighbors.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

namespace pipeline_check {

struct Mismatch {
  bool failed = false;
  std::string what;
};

inline void note(Mismatch& m, const std::string& what) {
  if (!m.failed) {
    m.failed = true;
    m.what = what;
  }
}

inline Mismatch run(const std::vector<hyperlex::Document>& documents,
                    int window, std::uint32_t min_count, std::size_t k) {
  using namespace hyperlex;
  Mismatch mismatch;

  const CountModel model = count(documents, window, min_count);
  const oracle::Counts counts = oracle::count(documents, window, min_count);
  const oracle::Metrics m = oracle::metrics(counts, true);

  // Counts, exact.
  std::size_t pair_entries = 0;
  for (WordId target = 0; target < model.table.num_targets(); ++target) {
    for (const auto& entry : model.table.row(target)) {
      ++pair_entries;
      const oracle::TokenPair pair{model.vocab.token(target),
                                   model.vocab.token(entry.context)};
      const auto it = counts.pairs.find(pair);
      if (it == counts.pairs.end() || it->second != entry.count) {
        note(mismatch, "pair count mismatch at " + pair.first + "," + pair.second);
      }
    }
  }
  if (pair_entries != counts.pairs.size()) note(mismatch, "pair domain mismatch");
  if (model.vocab.size() != counts.unigrams.size()) {
    note(mismatch, "vocabulary size mismatch");
  }

  const WeightComponents weights = compute_weights(model.table, model.vocab);
  const EntropyTable entropy =
      weighted_entropy(model.table, weights, Normalization::Relative);
  const BoltzmannMatrix matrix = boltzmann_normalize(entropy);

  for (WordId target = 0; target < model.table.num_targets(); ++target) {
    const auto& token = model.vocab.token(target);
    const auto row = model.table.row(target);
    if (row.empty()) continue;
    if (!testutil::close_rel(weights.d[target], m.d.at(token))) {
      note(mismatch, "d mismatch at " + token);
    }
    const std::uint64_t base = weights.layout->row_offsets[target];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const oracle::TokenPair pair{token, model.vocab.token(row[i].context)};
      if (weights.rank[base + i] != m.rank.at(pair)) {
        note(mismatch, "rank mismatch at " + pair.first + "," + pair.second);
      }
      if (!testutil::close_rel(entropy.h[base + i], m.h.at(pair))) {
        note(mismatch, "H mismatch at " + pair.first + "," + pair.second);
      }
      if (!testutil::close_rel(matrix.p[base + i], m.p.at(pair))) {
        note(mismatch, "P mismatch at " + pair.first + "," + pair.second);
      }
    }
  }

  const MeanProfileTable profiles = mean_profiles(matrix);

  // Neighbor lists for every target with enough support.
  for (WordId target = 0; target < model.vocab.size(); ++target) {
    if (matrix.layout->row_size(target) < 2) continue;
    const auto& token = model.vocab.token(target);
    const oracle::NeighborLists expected = oracle::neighbors(counts, m, token, k);
    const OverlapScores scores = overlap_scores(matrix, target);
    if (scores.candidates.size() != expected.overlap.size()) {
      note(mismatch, "candidate set size mismatch at " + token);
      continue;
    }
    for (const OverlapCandidate& c : scores.candidates) {
      const auto& candidate_token = model.vocab.token(c.word);
      if (!testutil::close_rel(c.overlap, expected.overlap.at(candidate_token))) {
        note(mismatch, "L mismatch at " + token + "/" + candidate_token);
      }
      if (c.l_common != expected.common.at(candidate_token)) {
        note(mismatch, "l_common mismatch at " + token + "/" + candidate_token);
      }
    }
    const auto to_tokens = [&](const std::vector<RankedNeighbor>& list) {
      std::vector<std::string> out;
      for (const auto& n : list) out.push_back(model.vocab.token(n.word));
      return out;
    };
    if (expected.degenerate) {
      bool threw = false;
      try {
        (void)strategy2(scores, k);
      } catch (const Error&) {
        threw = true;
      }
      if (!threw) note(mismatch, "missing degenerate error at " + token);
      continue;
    }
    if (to_tokens(strategy1(scores, k)) != expected.strategy1) {
      note(mismatch, "strategy1 mismatch at " + token);
    }
    const Strategy2Result second = strategy2(scores, k);
    if (to_tokens(second.neighbors) != expected.strategy2) {
      note(mismatch, "strategy2 mismatch at " + token);
    }
    const NeighborReport report = neighbor_report(matrix, target, k);
    if (to_tokens(report.closest) != expected.closest) {
      note(mismatch, "closest mismatch at " + token);
    }
  }

  // Coordinates for every embeddable word.
  for (WordId word = 0; word < model.vocab.size(); ++word) {
    if (!profiles.defined(word)) continue;
    const auto& token = model.vocab.token(word);
    for (bool euclidean : {false, true}) {
      const EmbedResult result =
          embed_words(profiles, std::vector<WordId>{word},
                      euclidean ? RhoMode::Euclidean : RhoMode::Paper);
      if (result.coordinates.size() != 1) {
        note(mismatch, "embedding failed for " + token);
        continue;
      }
      const DiskCoordinates& c = result.coordinates[0];
      const oracle::Coords expected = oracle::embed(m, token, euclidean);
      if (!testutil::close_rel(c.rho_prime, expected.rho_prime) ||
          !testutil::close_rel(c.theta_prime, expected.theta_prime) ||
          c.clamped != expected.clamped) {
        note(mismatch, "coordinate mismatch at " + token);
      }
    }
  }

  return mismatch;
}

}  // namespace pipeline_check
