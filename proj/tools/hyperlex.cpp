// Command-line front end: count a corpus into a model file, then run
// neighbor extraction, disk embedding, convergence tracking and baseline
// comparison against it. HYPERLEX_THREADS caps internal worker threads.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlex/baseline.hpp"
#include "hyperlex/boltzmann.hpp"
#include "hyperlex/corpus.hpp"
#include "hyperlex/detail/fnv.hpp"
#include "hyperlex/disk.hpp"
#include "hyperlex/error.hpp"
#include "hyperlex/metric.hpp"
#include "hyperlex/neighbors.hpp"
#include "hyperlex/report.hpp"
#include "hyperlex/svg.hpp"
#include "hyperlex/version.hpp"

namespace {

using namespace hyperlex;

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
  int window = 3;
  std::uint32_t min_count = 5;
  std::size_t top_k = 22;
  std::string normalization = "relative";
  std::string rho_mode = "paper";
  std::uint64_t epoch_size = 1'000'000;
  double epsilon_rho = 0.01;
  double epsilon_theta = 0.01;
  std::string format = "tsv";
  std::string output;
};

Normalization parse_normalization(const std::string& name) {
  if (name == "relative") return Normalization::Relative;
  if (name == "raw") return Normalization::Raw;
  fail(Errc::InvalidArgument, "unknown normalization: " + name);
}

RhoMode parse_rho_mode(const std::string& name) {
  if (name == "paper") return RhoMode::Paper;
  if (name == "euclidean") return RhoMode::Euclidean;
  fail(Errc::InvalidArgument, "unknown rho mode: " + name);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "tsv") return OutputFormat::Tsv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  fail(Errc::InvalidArgument, "unknown output format: " + name);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open input: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::Io, "read failed: " + path);
  return content;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::Io, "cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(Errc::Io, "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(Errc::Io, "cannot move output into place: " + path);
  }
}

MetaBlock make_meta(const RunConfig& config) {
  MetaBlock meta;
  meta.version = std::string(kToolName) + " " + kVersion;
  meta.set_config("window", std::to_string(config.window));
  meta.set_config("min_count", std::to_string(config.min_count));
  meta.set_config("top_k", std::to_string(config.top_k));
  meta.set_config("normalization", config.normalization);
  meta.set_config("rho_mode", config.rho_mode);
  meta.set_config("epoch_size", std::to_string(config.epoch_size));
  meta.set_config("epsilon_rho", format_double(config.epsilon_rho));
  meta.set_config("epsilon_theta", format_double(config.epsilon_theta));
  meta.set_config("format", config.format);
  return meta;
}

void add_input_checksum(MetaBlock& meta, const std::string& path,
                        const std::string& content) {
  meta.inputs.push_back({path, detail::hex64(detail::fnv1a64(content))});
}

std::vector<Document> load_documents(const std::vector<std::string>& paths,
                                     MetaBlock& meta) {
  std::vector<Document> documents;
  documents.reserve(paths.size());
  for (const auto& path : paths) {
    const std::string content = read_file(path);
    add_input_checksum(meta, path, content);
    documents.push_back(tokenize(content));
  }
  return documents;
}

CountModel load_model_with_meta(const std::string& path, MetaBlock& meta) {
  const std::string content = read_file(path);
  add_input_checksum(meta, path, content);
  return parse_model(content);
}

std::vector<std::string> load_wordlist(const std::string& path, MetaBlock& meta) {
  const std::string content = read_file(path);
  add_input_checksum(meta, path, content);
  return tokenize(content);
}

WordId resolve_token(const Vocabulary& vocab, const std::string& raw) {
  const auto folded = tokenize(raw);
  const std::string token = folded.empty() ? raw : folded[0];
  if (const auto id = vocab.find(token)) return *id;
  std::string message = "unknown token '" + token + "'";
  const auto near = vocab.near_misses(token);
  if (!near.empty()) {
    message += "; nearest known spellings:";
    std::size_t shown = 0;
    for (WordId id : near) {
      if (shown++ == 8) break;
      message += " " + vocab.token(id);
    }
  }
  fail(Errc::MissingWord, message);
}

struct Analysis {
  WeightComponents weights;
  EntropyTable entropy;
  BoltzmannMatrix matrix;
};

Analysis analyze(const CountModel& model, Normalization normalization) {
  Analysis a;
  a.weights = compute_weights(model.table, model.vocab);
  a.entropy = weighted_entropy(model.table, a.weights, normalization);
  a.matrix = boltzmann_normalize(a.entropy);
  return a;
}

// Vocabulary words with no observed context are dropped from every
// downstream table; surface how many, and which, in the metadata.
void note_excluded(MetaBlock& meta, const Vocabulary& vocab,
                   const BoltzmannMatrix& matrix) {
  if (matrix.excluded.empty()) return;
  meta.add_note("excluded_targets", std::to_string(matrix.excluded.size()));
  std::string sample;
  std::size_t shown = 0;
  for (WordId id : matrix.excluded) {
    if (shown++ == 8) {
      sample += " ...";
      break;
    }
    if (!sample.empty()) sample += " ";
    sample += vocab.token(id);
  }
  meta.add_note("excluded_sample", sample);
}

// ---------------------------------------------------------------------
// count

int cmd_count(const std::vector<std::string>& inputs, const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  const std::vector<Document> documents = load_documents(inputs, meta);
  const CountModel model = count(documents, config.window, config.min_count);
  save_model(config.output, model);
  meta.add_note("model", config.output);
  std::fputs(model_summary_tsv(meta, model).c_str(), stdout);
  return kExitSuccess;
}

// ---------------------------------------------------------------------
// inspect

int cmd_inspect(const std::string& model_path, const std::string& dump,
                const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  const CountModel model = load_model_with_meta(model_path, meta);
  meta.add_note("dump", dump);
  if (dump == "summary") {
    write_output(config.output, model_summary_tsv(meta, model));
    return kExitSuccess;
  }
  const Analysis a = analyze(model, parse_normalization(config.normalization));
  note_excluded(meta, model.vocab, a.matrix);
  if (dump == "entropy") {
    write_output(config.output, entropy_dump_tsv(meta, model.vocab, model.table,
                                                 a.weights, a.entropy));
  } else if (dump == "boltzmann") {
    write_output(config.output, boltzmann_dump_tsv(meta, model.vocab, a.matrix));
  } else {
    fail(Errc::InvalidArgument, "unknown dump kind: " + dump);
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------------
// neighbors

int cmd_neighbors(const std::string& model_path, const std::string& target,
                  const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  const CountModel model = load_model_with_meta(model_path, meta);
  const Analysis a = analyze(model, parse_normalization(config.normalization));
  note_excluded(meta, model.vocab, a.matrix);
  const WordId target_id = resolve_token(model.vocab, target);
  const NeighborReport report = neighbor_report(a.matrix, target_id, config.top_k);
  meta.add_note("strategy2", "argmax");
  meta.add_note("strategy2_denominator_negative",
                report.denominator_negative ? "true" : "false");
  const OutputFormat format = parse_format(config.format);
  if (format == OutputFormat::Json) {
    write_output(config.output, neighbors_json(meta, model.vocab, report));
  } else if (format == OutputFormat::Tsv) {
    write_output(config.output, neighbors_tsv(meta, model.vocab, report));
  } else {
    fail(Errc::InvalidArgument, "neighbors supports tsv or json output");
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------------
// embed

struct AveragedCoordinates {
  EmbedResult combined;
};

EmbedResult embed_across_models(const std::vector<CountModel>& models,
                                const std::vector<std::string>& words,
                                const RunConfig& config) {
  const Normalization normalization = parse_normalization(config.normalization);
  const RhoMode mode = parse_rho_mode(config.rho_mode);

  // Coordinates per model, keyed by word-list position.
  std::vector<std::map<std::size_t, DiskCoordinates>> per_model(models.size());
  std::vector<std::optional<std::string>> errors(words.size());
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const Analysis a = analyze(models[mi], normalization);
    const MeanProfileTable profiles = mean_profiles(a.matrix);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      if (errors[wi]) continue;
      const auto id = models[mi].vocab.find(words[wi]);
      if (!id) {
        errors[wi] = "not in vocabulary of model " + std::to_string(mi);
        continue;
      }
      const EmbedResult single =
          embed_words(profiles, std::vector<WordId>{*id}, mode);
      if (!single.errors.empty()) {
        errors[wi] = single.errors[0].message + " (model " + std::to_string(mi) + ")";
        continue;
      }
      per_model[mi][wi] = single.coordinates[0];
    }
  }

  // Word ids in the report refer to the first model's vocabulary.
  EmbedResult out;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    if (errors[wi]) {
      const auto id = models[0].vocab.find(words[wi]);
      if (id) {
        out.errors.push_back({*id, *errors[wi]});
      } else {
        // No id in the reference vocabulary; label lives in the message.
        out.errors.push_back({kNoWord, "'" + words[wi] + "' " + *errors[wi]});
      }
      continue;
    }
    DiskCoordinates mean{};
    mean.word = *models[0].vocab.find(words[wi]);
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const DiskCoordinates& c = per_model[mi].at(wi);
      mean.x += c.x;
      mean.y += c.y;
      mean.rho += c.rho;
      mean.rho_prime += c.rho_prime;
      mean.theta_prime += c.theta_prime;
      mean.clamped = mean.clamped || c.clamped;
    }
    const double n = static_cast<double>(models.size());
    mean.x /= n;
    mean.y /= n;
    mean.rho /= n;
    mean.rho_prime /= n;
    mean.theta_prime /= n;
    out.coordinates.push_back(mean);
  }
  std::sort(out.coordinates.begin(), out.coordinates.end(),
            [](const DiskCoordinates& a, const DiskCoordinates& b) {
              if (a.rho_prime != b.rho_prime) return a.rho_prime < b.rho_prime;
              return a.word < b.word;
            });
  return out;
}

int cmd_embed(const std::vector<std::string>& model_paths,
              const std::string& words_path, const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  std::vector<CountModel> models;
  models.reserve(model_paths.size());
  for (const auto& path : model_paths) {
    models.push_back(load_model_with_meta(path, meta));
  }
  const std::vector<std::string> words = load_wordlist(words_path, meta);
  if (models.size() > 1) {
    meta.add_note("averaged_models", std::to_string(models.size()));
  }

  const EmbedResult result = embed_across_models(models, words, config);
  const OutputFormat format = parse_format(config.format);
  if (format == OutputFormat::Tsv) {
    write_output(config.output, coordinates_tsv(meta, models[0].vocab, result));
  } else if (format == OutputFormat::Json) {
    write_output(config.output, coordinates_json(meta, models[0].vocab, result));
  } else {
    std::vector<SvgPoint> points;
    points.reserve(result.coordinates.size());
    for (const DiskCoordinates& c : result.coordinates) {
      points.push_back({models[0].vocab.token(c.word), c.rho_prime,
                        c.theta_prime, c.clamped});
    }
    std::vector<std::pair<std::string, std::string>> desc;
    desc.emplace_back("version", meta.version);
    for (const auto& [key, value] : meta.config) desc.emplace_back("config." + key, value);
    for (const auto& input : meta.inputs) desc.emplace_back("input." + input.path, input.checksum);
    write_output(config.output, render_disk_svg(points, SvgOptions{}, desc));
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------------
// convergence

int cmd_convergence(const std::vector<std::string>& inputs,
                    const std::string& words_path, const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  const std::vector<Document> documents = load_documents(inputs, meta);
  const std::vector<std::string> words = load_wordlist(words_path, meta);

  std::uint64_t total_tokens = 0;
  for (const auto& doc : documents) total_tokens += doc.size();
  const EpochPlan plan = split_epochs(total_tokens, config.epoch_size);
  if (plan.boundaries.size() < 2) {
    fail(Errc::Degenerate,
         "corpus too short for convergence: " + std::to_string(total_tokens) +
             " tokens yield " + std::to_string(plan.boundaries.size()) +
             " epoch(s), need at least 2");
  }
  const Normalization normalization = parse_normalization(config.normalization);
  const RhoMode mode = parse_rho_mode(config.rho_mode);

  // Cumulative prefixes: epoch e covers the first boundaries[e] tokens.
  // The last prefix spans the whole stream, so its model doubles as the
  // final vocabulary for the report.
  std::vector<ConvergenceTrace> traces(words.size());
  CountModel final_model;
  for (std::size_t e = 0; e < plan.boundaries.size(); ++e) {
    CountModel model =
        count_prefix(documents, config.window, config.min_count, plan.boundaries[e]);
    const Analysis a = analyze(model, normalization);
    const MeanProfileTable profiles = mean_profiles(a.matrix);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      const auto id = model.vocab.find(words[wi]);
      if (!id || !profiles.defined(*id)) continue;
      const EmbedResult single =
          embed_words(profiles, std::vector<WordId>{*id}, mode);
      if (single.coordinates.empty()) continue;
      traces[wi].epochs.push_back(static_cast<std::uint32_t>(e));
      traces[wi].rho_prime.push_back(single.coordinates[0].rho_prime);
      traces[wi].theta_prime.push_back(single.coordinates[0].theta_prime);
    }
    if (e + 1 == plan.boundaries.size()) final_model = std::move(model);
  }

  ConvergenceReport report;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const auto id = final_model.vocab.find(words[wi]);
    if (!id) {
      report.errors.push_back({words[wi], "not in vocabulary"});
      continue;
    }
    if (traces[wi].epochs.size() < 2) {
      report.errors.push_back(
          {words[wi], "fewer than 2 epochs with a defined profile"});
      continue;
    }
    WordConvergence wc;
    wc.trace = traces[wi];
    wc.trace.word = *id;
    wc.result = convergence(wc.trace, config.epsilon_rho, config.epsilon_theta);
    report.words.push_back(std::move(wc));
  }

  const OutputFormat format = parse_format(config.format);
  if (format == OutputFormat::Json) {
    write_output(config.output, convergence_json(meta, final_model.vocab, report));
  } else if (format == OutputFormat::Tsv) {
    write_output(config.output, convergence_tsv(meta, final_model.vocab, report));
  } else {
    fail(Errc::InvalidArgument, "convergence supports tsv or json output");
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------------
// compare

int cmd_compare(const std::string& model_path, const std::string& target,
                const std::string& vectors_path, const std::string& gold_path,
                const RunConfig& config) {
  MetaBlock meta = make_meta(config);
  const CountModel model = load_model_with_meta(model_path, meta);

  const std::string vectors_content = read_file(vectors_path);
  add_input_checksum(meta, vectors_path, vectors_content);
  std::vector<std::string> warnings;
  const VectorTable vectors = parse_vectors(vectors_content, &warnings);
  for (const auto& warning : warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }

  const std::vector<std::string> gold = load_wordlist(gold_path, meta);

  const Analysis a = analyze(model, parse_normalization(config.normalization));
  const WordId target_id = resolve_token(model.vocab, target);
  const NeighborReport entropy_report =
      neighbor_report(a.matrix, target_id, config.top_k);

  ComparisonReport report;
  report.target = model.vocab.token(target_id);
  report.k = config.top_k;
  for (const RankedNeighbor& n : entropy_report.closest) {
    report.entropy_list.push_back(model.vocab.token(n.word));
  }
  for (const ScoredToken& s :
       cosine_neighbors(vectors, report.target, config.top_k)) {
    report.baseline_list.push_back(s.token);
  }
  report.gold = gold;
  report.metrics = compare_reports(report.entropy_list, report.baseline_list,
                                   report.gold);

  const OutputFormat format = parse_format(config.format);
  if (format == OutputFormat::Json) {
    write_output(config.output, comparison_json(meta, report));
  } else if (format == OutputFormat::Tsv) {
    write_output(config.output, comparison_tsv(meta, report));
  } else {
    fail(Errc::InvalidArgument, "compare supports tsv or json output");
  }
  return kExitSuccess;
}

void add_common_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--window", config.window, "Context window per side")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--min-count", config.min_count,
                  "Drop tokens seen fewer times than this");
  cmd->add_option("--top-k", config.top_k, "Neighbor set size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--normalization", config.normalization,
                  "Pair mass in the entropy formula: relative | raw")
      ->check(CLI::IsMember({"relative", "raw"}));
  cmd->add_option("--rho-mode", config.rho_mode,
                  "Radial coordinate: paper (x^2+y^2) | euclidean")
      ->check(CLI::IsMember({"paper", "euclidean"}));
  cmd->add_option("--epoch-size", config.epoch_size, "Tokens per epoch")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon-rho", config.epsilon_rho,
                  "Convergence drift threshold on rho'");
  cmd->add_option("--epsilon-theta", config.epsilon_theta,
                  "Convergence drift threshold on theta'");
  cmd->add_option("--format", config.format, "Output format: tsv | json | svg")
      ->check(CLI::IsMember({"tsv", "json", "svg"}));
  cmd->add_option("--output", config.output,
                  "Output path (atomic write); stdout when omitted");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kVersion +
               " - weighted-entropy word geometry toolkit"};
  app.require_subcommand(1);
  app.footer("HYPERLEX_THREADS caps the worker-thread count.");

  RunConfig config;
  std::vector<std::string> inputs;
  std::vector<std::string> model_paths;
  std::string model_path;
  std::string target;
  std::string words_path;
  std::string vectors_path;
  std::string gold_path;
  std::string dump = "summary";

  CLI::App* count_cmd =
      app.add_subcommand("count", "Count a corpus into a model file");
  count_cmd->add_option("inputs", inputs, "UTF-8 plain-text files")
      ->required()
      ->check(CLI::ExistingFile);
  add_common_flags(count_cmd, config);
  count_cmd->get_option("--output")->required();

  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "Summarize or dump a model file");
  inspect_cmd->add_option("model", model_path, "Model file")->required();
  inspect_cmd->add_option("--dump", dump, "summary | entropy | boltzmann")
      ->check(CLI::IsMember({"summary", "entropy", "boltzmann"}));
  add_common_flags(inspect_cmd, config);

  CLI::App* neighbors_cmd = app.add_subcommand(
      "neighbors", "Semantically closest words for a target");
  neighbors_cmd->add_option("model", model_path, "Model file")->required();
  neighbors_cmd->add_option("target", target, "Target token")->required();
  add_common_flags(neighbors_cmd, config);

  CLI::App* embed_cmd = app.add_subcommand(
      "embed", "Map words onto the Poincare disk (averaged across models)");
  embed_cmd->add_option("models", model_paths, "Model file(s)")->required();
  embed_cmd->add_option("--words", words_path, "Word-list file")->required();
  add_common_flags(embed_cmd, config);

  CLI::App* convergence_cmd = app.add_subcommand(
      "convergence", "Per-epoch coordinate drift over cumulative prefixes");
  convergence_cmd->add_option("inputs", inputs, "UTF-8 plain-text files")
      ->required()
      ->check(CLI::ExistingFile);
  convergence_cmd->add_option("--words", words_path, "Word-list file")->required();
  add_common_flags(convergence_cmd, config);

  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Entropy neighbors vs cosine baseline against a gold set");
  compare_cmd->add_option("model", model_path, "Model file")->required();
  compare_cmd->add_option("target", target, "Target token")->required();
  compare_cmd->add_option("--vectors", vectors_path, "Word-vector file")
      ->required();
  compare_cmd->add_option("--gold", gold_path, "Gold word-list file")->required();
  add_common_flags(compare_cmd, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (count_cmd->parsed()) return cmd_count(inputs, config);
    if (inspect_cmd->parsed()) return cmd_inspect(model_path, dump, config);
    if (neighbors_cmd->parsed()) return cmd_neighbors(model_path, target, config);
    if (embed_cmd->parsed()) return cmd_embed(model_paths, words_path, config);
    if (convergence_cmd->parsed())
      return cmd_convergence(inputs, words_path, config);
    if (compare_cmd->parsed())
      return cmd_compare(model_path, target, vectors_path, gold_path, config);
    std::fprintf(stderr, "no subcommand given\n");
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", errc_name(e.code()), e.what());
    switch (e.code()) {
      case Errc::InvalidArgument: return kExitUsage;
      case Errc::Internal:
      case Errc::NonFinite: return kExitInternal;
      default: return kExitData;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
