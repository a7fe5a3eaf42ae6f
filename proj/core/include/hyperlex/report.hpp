#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperlex/baseline.hpp"
#include "hyperlex/boltzmann.hpp"
#include "hyperlex/corpus.hpp"
#include "hyperlex/disk.hpp"
#include "hyperlex/metric.hpp"
#include "hyperlex/neighbors.hpp"

namespace hyperlex {

enum class OutputFormat { Tsv, Json, Svg };

const char* output_format_name(OutputFormat format);

/// Header block echoed at the top of every output: tool version, the
/// exact configuration, input checksums and any per-run notes. TSV
/// renders it as leading '#'-prefixed lines, JSON as a "meta" object.
struct MetaBlock {
  struct Input {
    std::string path;
    std::string checksum;
  };

  std::string version;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Input> inputs;
  std::vector<std::pair<std::string, std::string>> notes;

  void set_config(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
  }
  void add_note(std::string key, std::string value) {
    notes.emplace_back(std::move(key), std::move(value));
  }
};

/// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double value);

std::string format_meta_tsv(const MetaBlock& meta);

std::string coordinates_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                            const EmbedResult& result);
std::string coordinates_json(const MetaBlock& meta, const Vocabulary& vocab,
                             const EmbedResult& result);

std::string neighbors_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                          const NeighborReport& report);
std::string neighbors_json(const MetaBlock& meta, const Vocabulary& vocab,
                           const NeighborReport& report);

std::string entropy_dump_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                             const CooccurrenceTable& table,
                             const WeightComponents& weights,
                             const EntropyTable& entropy);
std::string boltzmann_dump_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                               const BoltzmannMatrix& matrix);
std::string model_summary_tsv(const MetaBlock& meta, const CountModel& model);

struct WordConvergence {
  ConvergenceTrace trace;
  ConvergenceResult result;
};

struct ConvergenceReport {
  std::vector<WordConvergence> words;
  std::vector<std::pair<std::string, std::string>> errors;  // token -> message
};

std::string convergence_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                            const ConvergenceReport& report);
std::string convergence_json(const MetaBlock& meta, const Vocabulary& vocab,
                             const ConvergenceReport& report);

struct ComparisonReport {
  std::string target;
  std::size_t k = 0;
  std::vector<std::string> entropy_list;
  std::vector<std::string> baseline_list;
  std::vector<std::string> gold;
  ComparisonMetrics metrics;
};

std::string comparison_tsv(const MetaBlock& meta, const ComparisonReport& report);
std::string comparison_json(const MetaBlock& meta, const ComparisonReport& report);

}  // namespace hyperlex
