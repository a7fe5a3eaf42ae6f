#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "cli_util.hpp"
#include "hyperlex/corpus.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

using cli_util::run;
using hyperlex::Document;

namespace {

const char* kSmallCorpus =
    "the red car met the blue car near the red sky.\n"
    "a red car and a blue car and a green car passed the red house.\n"
    "the blue sky met the red sky above the green house.\n";

}  // namespace

TEST_CASE("count writes a deterministic, loadable model file") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("corpus.txt"), kSmallCorpus);
  const auto model_path = dir.file("model.hypx").string();

  const auto first = run({"count", dir.file("corpus.txt").string(),
                          "--min-count", "1", "--output", model_path},
                         dir);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("#version\thyperlex") != std::string::npos);
  CHECK(first.out.find("#config.window\t3") != std::string::npos);
  CHECK(first.out.find("#input\t") != std::string::npos);
  const std::string bytes1 = testutil::read_file(dir.file("model.hypx"));

  // Identical run, identical bytes.
  const auto second = run({"count", dir.file("corpus.txt").string(),
                           "--min-count", "1", "--output", model_path},
                          dir);
  REQUIRE(second.exit_code == 0);
  CHECK(second.out == first.out);
  CHECK(testutil::read_file(dir.file("model.hypx")) == bytes1);

  // The file equals the library serialization of the same pipeline.
  const Document tokens = hyperlex::tokenize(kSmallCorpus);
  const hyperlex::CountModel expected = hyperlex::count(tokens, 3, 1);
  CHECK(bytes1 == hyperlex::serialize_model(expected));

  // And its counts agree with the brute-force oracle.
  const oracle::Counts oracle_counts = oracle::count({tokens}, 3, 1);
  const hyperlex::CountModel loaded = hyperlex::load_model(model_path);
  CHECK(loaded.table.pair_entries() == oracle_counts.pairs.size());
  for (const auto& [pair, n] : oracle_counts.pairs) {
    const auto target = loaded.vocab.find(pair.first);
    const auto context = loaded.vocab.find(pair.second);
    REQUIRE(target.has_value());
    REQUIRE(context.has_value());
    CHECK(loaded.table.pair_count(*target, *context) == n);
  }
}

TEST_CASE("count without inputs is a usage error") {
  testutil::TempDir dir;
  const auto result = run({"count", "--output", dir.file("m.hypx").string()}, dir);
  CHECK(result.exit_code == 1);
}

TEST_CASE("worker count changes neither model bytes nor analysis output") {
  testutil::TempDir dir;
  std::string text;
  for (int i = 0; i < 200; ++i) text += kSmallCorpus;
  testutil::write_file(dir.file("corpus.txt"), text);
  const auto model = dir.file("model.hypx").string();
  std::string model_bytes[3];
  std::string neighbor_bytes[3];
  int t = 0;
  for (const char* threads : {"1", "2", "4"}) {
    const std::string env = std::string("HYPERLEX_THREADS=") + threads;
    const auto counted =
        run({"count", dir.file("corpus.txt").string(), "--min-count", "2",
             "--output", model},
            dir, env);
    REQUIRE(counted.exit_code == 0);
    model_bytes[t] = testutil::read_file(model);
    const auto neighbors = run({"neighbors", model, "red", "--top-k", "6"}, dir, env);
    REQUIRE(neighbors.exit_code == 0);
    neighbor_bytes[t] = neighbors.out;
    ++t;
  }
  CHECK(model_bytes[0] == model_bytes[1]);
  CHECK(model_bytes[1] == model_bytes[2]);
  CHECK(neighbor_bytes[0] == neighbor_bytes[1]);
  CHECK(neighbor_bytes[1] == neighbor_bytes[2]);
}

TEST_CASE("missing model file is a data error") {
  testutil::TempDir dir;
  const auto result = run({"inspect", dir.file("absent.hypx").string()}, dir);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("error") != std::string::npos);
}

TEST_CASE("corrupted model file is a data error") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("corpus.txt"), kSmallCorpus);
  const auto model_path = dir.file("model.hypx").string();
  REQUIRE(run({"count", dir.file("corpus.txt").string(), "--min-count", "1",
               "--output", model_path},
              dir)
              .exit_code == 0);
  std::string bytes = testutil::read_file(model_path);
  bytes[bytes.size() / 2] ^= 0x20;
  testutil::write_file(model_path, bytes);
  const auto result = run({"inspect", model_path}, dir);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("checksum") != std::string::npos);
}

TEST_CASE("inspect dumps summary, entropy and boltzmann tables") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("corpus.txt"), kSmallCorpus);
  const auto model_path = dir.file("model.hypx").string();
  REQUIRE(run({"count", dir.file("corpus.txt").string(), "--min-count", "1",
               "--output", model_path},
              dir)
              .exit_code == 0);

  const auto summary = run({"inspect", model_path}, dir);
  REQUIRE(summary.exit_code == 0);
  CHECK(summary.out.find("vocabulary_size\t") != std::string::npos);

  const auto entropy = run({"inspect", model_path, "--dump", "entropy"}, dir);
  REQUIRE(entropy.exit_code == 0);
  CHECK(entropy.out.find("target\tcontext\td\trank\tq\tH\n") != std::string::npos);

  const auto boltzmann = run({"inspect", model_path, "--dump", "boltzmann"}, dir);
  REQUIRE(boltzmann.exit_code == 0);
  CHECK(boltzmann.out.find("target\tcontext\tP\n") != std::string::npos);
  CHECK(boltzmann.out.find("#note.dump\tboltzmann") != std::string::npos);
}

TEST_CASE("neighbors reports and unknown targets suggest spellings") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("corpus.txt"), kSmallCorpus);
  const auto model_path = dir.file("model.hypx").string();
  REQUIRE(run({"count", dir.file("corpus.txt").string(), "--min-count", "1",
               "--output", model_path},
              dir)
              .exit_code == 0);

  const auto report = run({"neighbors", model_path, "red", "--top-k", "5"}, dir);
  REQUIRE(report.exit_code == 0);
  CHECK(report.out.find("#target\tred") != std::string::npos);
  CHECK(report.out.find("strategy1\t0\tred\t") != std::string::npos);
  CHECK(report.out.find("#note.strategy2\targmax") != std::string::npos);

  const auto json_report =
      run({"neighbors", model_path, "RED", "--top-k", "5", "--format", "json"}, dir);
  REQUIRE(json_report.exit_code == 0);  // target token is case-folded
  CHECK(json_report.out.find("\"target\": \"red\"") != std::string::npos);

  const auto unknown = run({"neighbors", model_path, "redd"}, dir);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("unknown token 'redd'") != std::string::npos);
  CHECK(unknown.err.find("red") != std::string::npos);
}

TEST_CASE("embed produces coordinates, averages models and renders svg") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("one.txt"), kSmallCorpus);
  testutil::write_file(dir.file("two.txt"),
                       std::string(kSmallCorpus) +
                           "the red car met a green car by the blue house.\n");
  testutil::write_file(dir.file("words.txt"), "red\nblue\ngreen\n");
  const auto model1 = dir.file("one.hypx").string();
  const auto model2 = dir.file("two.hypx").string();
  REQUIRE(run({"count", dir.file("one.txt").string(), "--min-count", "1",
               "--output", model1},
              dir)
              .exit_code == 0);
  REQUIRE(run({"count", dir.file("two.txt").string(), "--min-count", "1",
               "--output", model2},
              dir)
              .exit_code == 0);

  const auto single =
      run({"embed", model1, "--words", dir.file("words.txt").string()}, dir);
  REQUIRE(single.exit_code == 0);
  CHECK(single.out.find("word\tx\ty\trho\trho_prime\ttheta_prime\tclamped\n") !=
        std::string::npos);

  const auto averaged = run({"embed", model1, model2, "--words",
                             dir.file("words.txt").string()},
                            dir);
  REQUIRE(averaged.exit_code == 0);
  CHECK(averaged.out.find("#note.averaged_models\t2") != std::string::npos);

  const auto svg =
      run({"embed", model1, "--words", dir.file("words.txt").string(),
           "--format", "svg", "--output", dir.file("plot.svg").string()},
          dir);
  REQUIRE(svg.exit_code == 0);
  const std::string plot = testutil::read_file(dir.file("plot.svg"));
  CHECK(plot.find("<svg") != std::string::npos);
  CHECK(plot.find("popularity") != std::string::npos);
  CHECK(plot.find(">red</text>") != std::string::npos);

  // Empty word list: exit success, header only.
  testutil::write_file(dir.file("empty.txt"), "\n");
  const auto empty =
      run({"embed", model1, "--words", dir.file("empty.txt").string()}, dir);
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.find("word\tx\ty") != std::string::npos);

  // Words absent from the model become per-word error entries; the rest
  // still embed and the command succeeds.
  testutil::write_file(dir.file("partial.txt"), "red\nunseenword\n");
  const auto partial = run({"embed", model1, "--words",
                            dir.file("partial.txt").string()},
                           dir);
  CHECK(partial.exit_code == 0);
  CHECK(partial.out.find("red\t") != std::string::npos);
  CHECK(partial.out.find("#error\t") != std::string::npos);
  CHECK(partial.out.find("unseenword") != std::string::npos);
}

TEST_CASE("convergence traces a repeated-sentence stream") {
  testutil::TempDir dir;
  // One sentence repeated: cumulative epochs all see the same statistics,
  // so every word converges at epoch 1.
  std::string text;
  for (int i = 0; i < 40; ++i) text += "the red car met the blue sky today.\n";
  testutil::write_file(dir.file("loop.txt"), text);
  testutil::write_file(dir.file("words.txt"), "red\nblue\n");

  const auto result =
      run({"convergence", dir.file("loop.txt").string(), "--words",
           dir.file("words.txt").string(), "--epoch-size", "80", "--min-count",
           "1", "--format", "json"},
          dir);
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("\"rho_converged_epoch\": 1") != std::string::npos);
  CHECK(result.out.find("\"theta_converged_epoch\": 1") != std::string::npos);

  // Too-short corpus: a single epoch cannot produce drifts.
  const auto too_short =
      run({"convergence", dir.file("loop.txt").string(), "--words",
           dir.file("words.txt").string(), "--epoch-size", "100000"},
          dir);
  CHECK(too_short.exit_code == 2);
}

TEST_CASE("convergence drifts match a recount-from-scratch oracle") {
  testutil::TempDir dir;
  const std::string text =
      "red blue red green blue red car blue red green "
      "blue red sky green red blue car red blue green "
      "green red blue sky red car green blue red blue\n";
  testutil::write_file(dir.file("stream.txt"), text);
  testutil::write_file(dir.file("words.txt"), "red\n");

  const auto result =
      run({"convergence", dir.file("stream.txt").string(), "--words",
           dir.file("words.txt").string(), "--epoch-size", "15", "--min-count",
           "1", "--window", "2", "--format", "json"},
          dir);
  REQUIRE(result.exit_code == 0);

  const Document tokens = hyperlex::tokenize(text);
  // Oracle: fresh count over each cumulative prefix, then embed.
  const std::vector<std::uint64_t> boundaries = {15, 30};
  std::vector<long double> expected_rho;
  for (const auto boundary : boundaries) {
    const oracle::Counts counts = oracle::count_prefix({tokens}, 2, 1, boundary);
    const oracle::Metrics m = oracle::metrics(counts, true);
    expected_rho.push_back(oracle::embed(m, "red", false).rho_prime);
  }
  // Parse the reported trace values back out of the JSON.
  std::istringstream stream(result.out);
  std::vector<double> reported;
  std::string line;
  while (std::getline(stream, line)) {
    const auto pos = line.find("\"rho_prime\": ");
    if (pos != std::string::npos) {
      reported.push_back(std::stod(line.substr(pos + 13)));
    }
  }
  REQUIRE(reported.size() == expected_rho.size());
  for (std::size_t i = 0; i < reported.size(); ++i) {
    CHECK(testutil::close_rel(reported[i], expected_rho[i], 1e-9));
  }
}

TEST_CASE("compare pits the entropy neighbors against cosine vectors") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("corpus.txt"), kSmallCorpus);
  const auto model_path = dir.file("model.hypx").string();
  REQUIRE(run({"count", dir.file("corpus.txt").string(), "--min-count", "1",
               "--output", model_path},
              dir)
              .exit_code == 0);
  testutil::write_file(dir.file("gold.txt"), "blue\ngreen\n");

  const auto result =
      run({"compare", model_path, "red", "--vectors",
           std::string(HYPERLEX_TEST_FIXTURES) + "/vectors_50d.txt", "--gold",
           dir.file("gold.txt").string(), "--top-k", "8", "--format", "json"},
          dir);
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("\"target\": \"red\"") != std::string::npos);
  CHECK(result.out.find("\"jaccard\":") != std::string::npos);
  CHECK(result.out.find("\"gold_hits\":") != std::string::npos);
}
