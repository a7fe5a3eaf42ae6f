#include "hyperlex/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

namespace hyperlex {

using nlohmann::json;
using nlohmann::ordered_json;

const char* output_format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::Tsv: return "tsv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Svg: return "svg";
  }
  return "unknown";
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string format_meta_tsv(const MetaBlock& meta) {
  std::string out;
  out += "#version\t" + meta.version + "\n";
  for (const auto& [key, value] : meta.config) {
    out += "#config." + key + "\t" + value + "\n";
  }
  for (const auto& input : meta.inputs) {
    out += "#input\t" + input.path + "\t" + input.checksum + "\n";
  }
  for (const auto& [key, value] : meta.notes) {
    out += "#note." + key + "\t" + value + "\n";
  }
  return out;
}

namespace {

ordered_json meta_to_json(const MetaBlock& meta) {
  ordered_json m;
  m["version"] = meta.version;
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : meta.config) config[key] = value;
  m["config"] = std::move(config);
  ordered_json inputs = ordered_json::array();
  for (const auto& input : meta.inputs) {
    inputs.push_back({{"path", input.path}, {"checksum", input.checksum}});
  }
  m["inputs"] = std::move(inputs);
  ordered_json notes = ordered_json::object();
  for (const auto& [key, value] : meta.notes) notes[key] = value;
  m["notes"] = std::move(notes);
  return m;
}

ordered_json neighbor_list_json(const Vocabulary& vocab,
                                std::span<const RankedNeighbor> list) {
  ordered_json out = ordered_json::array();
  for (const RankedNeighbor& n : list) {
    out.push_back({{"word", vocab.token(n.word)},
                   {"L", n.overlap},
                   {"l_common", n.l_common}});
  }
  return out;
}

void append_neighbor_rows(std::string& out, const char* list_name,
                          const Vocabulary& vocab,
                          std::span<const RankedNeighbor> list) {
  std::size_t position = 0;
  for (const RankedNeighbor& n : list) {
    out += std::string(list_name) + "\t" + std::to_string(position++) + "\t" +
           vocab.token(n.word) + "\t" + format_double(n.overlap) + "\t" +
           std::to_string(n.l_common) + "\n";
  }
}

}  // namespace

namespace {

// Error entries synthesized outside embed_words may carry no valid id.
std::string error_label(const Vocabulary& vocab, const EmbedError& e) {
  return e.word < vocab.size() ? vocab.token(e.word) : std::string("(unknown)");
}

}  // namespace

std::string coordinates_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                            const EmbedResult& result) {
  std::string out = format_meta_tsv(meta);
  out += "word\tx\ty\trho\trho_prime\ttheta_prime\tclamped\n";
  for (const DiskCoordinates& c : result.coordinates) {
    out += vocab.token(c.word) + "\t" + format_double(c.x) + "\t" +
           format_double(c.y) + "\t" + format_double(c.rho) + "\t" +
           format_double(c.rho_prime) + "\t" + format_double(c.theta_prime) +
           "\t" + (c.clamped ? "true" : "false") + "\n";
  }
  for (const EmbedError& e : result.errors) {
    out += "#error\t" + error_label(vocab, e) + "\t" + e.message + "\n";
  }
  return out;
}

std::string coordinates_json(const MetaBlock& meta, const Vocabulary& vocab,
                             const EmbedResult& result) {
  ordered_json root;
  root["meta"] = meta_to_json(meta);
  ordered_json rows = ordered_json::array();
  for (const DiskCoordinates& c : result.coordinates) {
    rows.push_back({{"word", vocab.token(c.word)},
                    {"x", c.x},
                    {"y", c.y},
                    {"rho", c.rho},
                    {"rho_prime", c.rho_prime},
                    {"theta_prime", c.theta_prime},
                    {"clamped", c.clamped}});
  }
  root["coordinates"] = std::move(rows);
  ordered_json errors = ordered_json::array();
  for (const EmbedError& e : result.errors) {
    errors.push_back({{"word", error_label(vocab, e)}, {"message", e.message}});
  }
  root["errors"] = std::move(errors);
  return root.dump(2) + "\n";
}

std::string neighbors_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                          const NeighborReport& report) {
  std::string out = format_meta_tsv(meta);
  out += "#target\t" + vocab.token(report.target) + "\n";
  out += "#k\t" + std::to_string(report.k) + "\n";
  out += "list\tposition\tword\tL\tl_common\n";
  append_neighbor_rows(out, "strategy1", vocab, report.strategy1);
  append_neighbor_rows(out, "strategy2", vocab, report.strategy2);
  append_neighbor_rows(out, "closest", vocab, report.closest);
  return out;
}

std::string neighbors_json(const MetaBlock& meta, const Vocabulary& vocab,
                           const NeighborReport& report) {
  ordered_json root;
  root["meta"] = meta_to_json(meta);
  root["target"] = vocab.token(report.target);
  root["k"] = report.k;
  root["strategy1"] = neighbor_list_json(vocab, report.strategy1);
  root["strategy2"] = neighbor_list_json(vocab, report.strategy2);
  root["closest"] = neighbor_list_json(vocab, report.closest);
  return root.dump(2) + "\n";
}

std::string entropy_dump_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                             const CooccurrenceTable& table,
                             const WeightComponents& weights,
                             const EntropyTable& entropy) {
  std::string out = format_meta_tsv(meta);
  out += "target\tcontext\td\trank\tq\tH\n";
  for (WordId target = 0; target < table.num_targets(); ++target) {
    const auto row = table.row(target);
    const std::uint64_t base = weights.layout->row_offsets[target];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += vocab.token(target) + "\t" + vocab.token(row[i].context) + "\t" +
             format_double(weights.d[target]) + "\t" +
             std::to_string(weights.rank[base + i]) + "\t" +
             format_double(weights.q[base + i]) + "\t" +
             format_double(entropy.h[base + i]) + "\n";
    }
  }
  return out;
}

std::string boltzmann_dump_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                               const BoltzmannMatrix& matrix) {
  std::string out = format_meta_tsv(meta);
  out += "target\tcontext\tP\n";
  for (WordId target = 0; target < matrix.layout->rows(); ++target) {
    const auto cols = matrix.layout->row_cols(target);
    const auto row = matrix.row(target);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out += vocab.token(target) + "\t" + vocab.token(cols[i]) + "\t" +
             format_double(row[i]) + "\n";
    }
  }
  return out;
}

std::string model_summary_tsv(const MetaBlock& meta, const CountModel& model) {
  std::string out = format_meta_tsv(meta);
  out += "key\tvalue\n";
  out += "window\t" + std::to_string(model.table.window()) + "\n";
  out += "min_count\t" + std::to_string(model.table.min_count()) + "\n";
  out += "total_tokens\t" + std::to_string(model.vocab.total_tokens()) + "\n";
  out += "vocabulary_size\t" + std::to_string(model.vocab.size()) + "\n";
  out += "pair_entries\t" + std::to_string(model.table.pair_entries()) + "\n";
  out += "total_pair_mass\t" + std::to_string(model.table.total_pair_mass()) + "\n";
  return out;
}

namespace {

std::string axis_epoch(const AxisConvergence& axis) {
  return axis.converged ? std::to_string(axis.epoch) : std::string("none");
}

}  // namespace

std::string convergence_tsv(const MetaBlock& meta, const Vocabulary& vocab,
                            const ConvergenceReport& report) {
  std::string out = format_meta_tsv(meta);
  out += "record\tword\tepoch\trho_prime\ttheta_prime\tdrift_rho\tdrift_theta\n";
  for (const WordConvergence& wc : report.words) {
    const auto& t = wc.trace;
    for (std::size_t i = 0; i < t.epochs.size(); ++i) {
      out += "trace\t" + vocab.token(t.word) + "\t" +
             std::to_string(t.epochs[i]) + "\t" + format_double(t.rho_prime[i]) +
             "\t" + format_double(t.theta_prime[i]) + "\t";
      if (i == 0) {
        out += "\t\n";
      } else {
        out += format_double(std::abs(t.rho_prime[i] - t.rho_prime[i - 1])) +
               "\t" +
               format_double(std::abs(t.theta_prime[i] - t.theta_prime[i - 1])) +
               "\n";
      }
    }
  }
  for (const WordConvergence& wc : report.words) {
    out += "converged\t" + vocab.token(wc.trace.word) + "\t\t" +
           axis_epoch(wc.result.rho) + "\t" + axis_epoch(wc.result.theta) +
           "\t\t\n";
  }
  for (const auto& [token, message] : report.errors) {
    out += "#error\t" + token + "\t" + message + "\n";
  }
  return out;
}

std::string convergence_json(const MetaBlock& meta, const Vocabulary& vocab,
                             const ConvergenceReport& report) {
  ordered_json root;
  root["meta"] = meta_to_json(meta);
  ordered_json words = ordered_json::array();
  for (const WordConvergence& wc : report.words) {
    const auto& t = wc.trace;
    ordered_json epochs = ordered_json::array();
    for (std::size_t i = 0; i < t.epochs.size(); ++i) {
      epochs.push_back({{"epoch", t.epochs[i]},
                        {"rho_prime", t.rho_prime[i]},
                        {"theta_prime", t.theta_prime[i]}});
    }
    ordered_json entry;
    entry["word"] = vocab.token(t.word);
    entry["trace"] = std::move(epochs);
    entry["rho_converged_epoch"] =
        wc.result.rho.converged ? ordered_json(wc.result.rho.epoch) : ordered_json(nullptr);
    entry["theta_converged_epoch"] =
        wc.result.theta.converged ? ordered_json(wc.result.theta.epoch)
                                  : ordered_json(nullptr);
    words.push_back(std::move(entry));
  }
  root["words"] = std::move(words);
  ordered_json errors = ordered_json::array();
  for (const auto& [token, message] : report.errors) {
    errors.push_back({{"word", token}, {"message", message}});
  }
  root["errors"] = std::move(errors);
  return root.dump(2) + "\n";
}

std::string comparison_tsv(const MetaBlock& meta, const ComparisonReport& report) {
  std::string out = format_meta_tsv(meta);
  out += "#target\t" + report.target + "\n";
  out += "#k\t" + std::to_string(report.k) + "\n";
  out += "list\tposition\tword\tgold\n";
  const auto emit = [&](const char* name, std::span<const std::string> list) {
    std::size_t position = 0;
    for (const std::string& word : list) {
      const bool in_gold =
          std::find(report.gold.begin(), report.gold.end(), word) != report.gold.end();
      out += std::string(name) + "\t" + std::to_string(position++) + "\t" + word +
             "\t" + (in_gold ? "true" : "false") + "\n";
    }
  };
  emit("entropy", report.entropy_list);
  emit("baseline", report.baseline_list);
  out += "#entropy_gold_hits\t" + std::to_string(report.metrics.entropy_gold_hits) + "\n";
  out += "#baseline_gold_hits\t" + std::to_string(report.metrics.baseline_gold_hits) + "\n";
  out += "#jaccard\t" + format_double(report.metrics.jaccard) + "\n";
  return out;
}

std::string comparison_json(const MetaBlock& meta, const ComparisonReport& report) {
  ordered_json root;
  root["meta"] = meta_to_json(meta);
  root["target"] = report.target;
  root["k"] = report.k;
  root["gold"] = report.gold;
  root["entropy"] = {{"list", report.entropy_list},
                     {"gold_hits", report.metrics.entropy_gold_hits}};
  root["baseline"] = {{"list", report.baseline_list},
                      {"gold_hits", report.metrics.baseline_gold_hits}};
  root["jaccard"] = report.metrics.jaccard;
  return root.dump(2) + "\n";
}

}  // namespace hyperlex
