#include "hyperlex/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include "hyperlex/detail/fnv.hpp"
#include "hyperlex/detail/parallel.hpp"
#include "hyperlex/detail/utf8.hpp"

namespace hyperlex {

namespace {

constexpr std::string_view kMagic = "HYPXM1";

// Contiguous token slice of one document, clipped by the stream-prefix
// limit. Windows operate inside a slice only.
struct Slice {
  const Document* doc;
  std::size_t take;
};

std::vector<Slice> clip_documents(std::span<const Document> documents,
                                  std::uint64_t token_limit) {
  std::vector<Slice> slices;
  std::uint64_t remaining = token_limit;
  for (const Document& doc : documents) {
    if (remaining == 0) break;
    const std::size_t take =
        static_cast<std::size_t>(std::min<std::uint64_t>(doc.size(), remaining));
    slices.push_back({&doc, take});
    remaining -= take;
  }
  return slices;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens,
                       std::vector<std::uint64_t> frequencies,
                       std::uint64_t total_tokens)
    : tokens_(std::move(tokens)),
      frequencies_(std::move(frequencies)),
      total_tokens_(total_tokens) {
  if (tokens_.size() != frequencies_.size()) {
    fail(Errc::Internal, "vocabulary token/frequency size mismatch");
  }
  index_.reserve(tokens_.size());
  for (WordId id = 0; id < tokens_.size(); ++id) {
    if (!index_.emplace(tokens_[id], id).second) {
      fail(Errc::Internal, "duplicate vocabulary token: " + tokens_[id]);
    }
  }
}

std::optional<WordId> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool within_edit_distance_one(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (b.size() - a.size() > 1) return false;
  std::size_t i = 0;
  while (i < a.size() && a[i] == b[i]) ++i;
  if (i == a.size()) return b.size() > a.size();  // proper prefix
  const std::size_t skip_a = a.size() == b.size() ? i + 1 : i;
  for (std::size_t j = skip_a, k = i + 1; j < a.size(); ++j, ++k) {
    if (a[j] != b[k]) return false;
  }
  return true;
}

}  // namespace

std::vector<WordId> Vocabulary::near_misses(std::string_view token) const {
  std::vector<WordId> out;
  for (WordId id = 0; id < tokens_.size(); ++id) {
    if (tokens_[id] != token && within_edit_distance_one(token, tokens_[id])) {
      out.push_back(id);
    }
  }
  return out;
}

CooccurrenceTable::CooccurrenceTable(int window, std::uint32_t min_count,
                                     std::size_t num_targets,
                                     std::vector<std::uint64_t> row_offsets,
                                     std::vector<Entry> entries)
    : window_(window),
      min_count_(min_count),
      row_offsets_(std::move(row_offsets)),
      entries_(std::move(entries)) {
  if (window_ < 1) fail(Errc::InvalidArgument, "window must be >= 1");
  if (row_offsets_.size() != num_targets + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != entries_.size()) {
    fail(Errc::Internal, "co-occurrence row offsets inconsistent");
  }
  context_totals_.assign(num_targets, 0);
  total_mass_ = 0;
  for (std::size_t target = 0; target < num_targets; ++target) {
    for (std::size_t i = row_offsets_[target]; i < row_offsets_[target + 1]; ++i) {
      const Entry& e = entries_[i];
      if (e.count == 0) fail(Errc::Internal, "zero co-occurrence count stored");
      if (e.context >= num_targets) fail(Errc::Internal, "context id out of range");
      if (i > row_offsets_[target] && entries_[i - 1].context >= e.context) {
        fail(Errc::Internal, "row entries not strictly sorted by context");
      }
      context_totals_[e.context] += e.count;
      total_mass_ += e.count;
    }
  }
}

std::span<const CooccurrenceTable::Entry> CooccurrenceTable::row(
    WordId target) const {
  const std::size_t begin = row_offsets_.at(target);
  const std::size_t end = row_offsets_.at(target + 1);
  return {entries_.data() + begin, end - begin};
}

std::uint32_t CooccurrenceTable::pair_count(WordId target, WordId context) const {
  const auto entries = row(target);
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), context,
      [](const Entry& e, WordId c) { return e.context < c; });
  if (it == entries.end() || it->context != context) return 0;
  return it->count;
}

std::uint32_t CooccurrenceTable::context_type_count(WordId target) const {
  return static_cast<std::uint32_t>(row_offsets_.at(target + 1) -
                                    row_offsets_.at(target));
}

std::vector<std::string> tokenize(std::string_view utf8_text) {
  std::vector<std::string> out;
  std::string current;
  std::size_t i = 0;
  while (i < utf8_text.size()) {
    const auto [cp, length] = detail::decode_utf8(utf8_text, i);
    i += length;
    if (detail::is_letter(cp)) {
      detail::append_utf8(current, detail::to_lower(cp));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

CountModel count_prefix(std::span<const Document> documents, int window,
                        std::uint32_t min_count, std::uint64_t token_limit) {
  if (window < 1) {
    fail(Errc::InvalidArgument,
         "window must be >= 1, got " + std::to_string(window));
  }
  const auto slices = clip_documents(documents, token_limit);

  // Unigram pass, sharded over each slice and merged by summation.
  std::unordered_map<std::string, std::uint64_t> unigrams;
  std::uint64_t total_tokens = 0;
  for (const Slice& slice : slices) {
    total_tokens += slice.take;
    std::vector<std::unordered_map<std::string, std::uint64_t>> partial(
        detail::worker_count());
    detail::parallel_chunks(slice.take, [&](std::size_t begin, std::size_t end,
                                            std::size_t worker) {
      auto& local = partial[worker % partial.size()];
      for (std::size_t t = begin; t < end; ++t) {
        ++local[(*slice.doc)[t]];
      }
    });
    for (auto& local : partial) {
      for (auto& [token, n] : local) unigrams[token] += n;
    }
  }

  // Ids by descending frequency, ties by token.
  std::vector<std::pair<std::string_view, std::uint64_t>> selected;
  selected.reserve(unigrams.size());
  const std::uint64_t cutoff = std::max<std::uint32_t>(min_count, 1);
  for (const auto& [token, freq] : unigrams) {
    if (freq >= cutoff) selected.emplace_back(token, freq);
  }
  std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> frequencies;
  tokens.reserve(selected.size());
  frequencies.reserve(selected.size());
  for (const auto& [token, freq] : selected) {
    tokens.emplace_back(token);
    frequencies.push_back(freq);
  }
  Vocabulary vocab(std::move(tokens), std::move(frequencies), total_tokens);
  const std::size_t n = vocab.size();

  // Pair pass: emit packed (target, context) keys, sort, run-length
  // encode into rows. Shards only append to their own buffer; the sort
  // makes the merge order immaterial.
  std::vector<std::uint64_t> keys;
  for (const Slice& slice : slices) {
    std::vector<WordId> ids(slice.take);
    detail::parallel_chunks(
        slice.take, [&](std::size_t begin, std::size_t end, std::size_t) {
          for (std::size_t t = begin; t < end; ++t) {
            ids[t] = vocab.find((*slice.doc)[t]).value_or(kNoWord);
          }
        });
    std::vector<std::vector<std::uint64_t>> emitted(detail::worker_count());
    detail::parallel_chunks(
        slice.take, [&](std::size_t begin, std::size_t end, std::size_t worker) {
          auto& local = emitted[worker % emitted.size()];
          for (std::size_t t = begin; t < end; ++t) {
            if (ids[t] == kNoWord) continue;
            const std::size_t lo =
                t >= static_cast<std::size_t>(window) ? t - window : 0;
            const std::size_t hi =
                std::min(slice.take - 1, t + static_cast<std::size_t>(window));
            for (std::size_t c = lo; c <= hi; ++c) {
              if (c == t || ids[c] == kNoWord) continue;
              local.push_back((static_cast<std::uint64_t>(ids[t]) << 32) |
                              ids[c]);
            }
          }
        });
    for (auto& local : emitted) {
      keys.insert(keys.end(), local.begin(), local.end());
    }
  }
  std::sort(keys.begin(), keys.end());

  std::vector<std::uint64_t> row_offsets(n + 1, 0);
  std::vector<CooccurrenceTable::Entry> entries;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const auto target = static_cast<WordId>(keys[i] >> 32);
    const auto context = static_cast<WordId>(keys[i] & 0xFFFFFFFFu);
    const std::size_t run = j - i;
    if (run > std::numeric_limits<std::uint32_t>::max()) {
      fail(Errc::Internal, "pair count overflow");
    }
    entries.push_back({context, static_cast<std::uint32_t>(run)});
    ++row_offsets[target + 1];
    i = j;
  }
  for (std::size_t r = 0; r < n; ++r) row_offsets[r + 1] += row_offsets[r];

  return CountModel{
      std::move(vocab),
      CooccurrenceTable(window, std::max<std::uint32_t>(min_count, 1), n,
                        std::move(row_offsets), std::move(entries))};
}

CountModel count(std::span<const Document> documents, int window,
                 std::uint32_t min_count) {
  return count_prefix(documents, window, min_count,
                      std::numeric_limits<std::uint64_t>::max());
}

CountModel count(const Document& tokens, int window, std::uint32_t min_count) {
  return count(std::span<const Document>(&tokens, 1), window, min_count);
}

EpochPlan split_epochs(std::uint64_t total_tokens, std::uint64_t epoch_size) {
  if (epoch_size == 0) fail(Errc::InvalidArgument, "epoch size must be >= 1");
  EpochPlan plan;
  plan.epoch_size = epoch_size;
  for (std::uint64_t b = epoch_size; b < total_tokens; b += epoch_size) {
    plan.boundaries.push_back(b);
  }
  if (total_tokens > 0) plan.boundaries.push_back(total_tokens);
  return plan;
}

std::string serialize_model(const CountModel& model) {
  const Vocabulary& vocab = model.vocab;
  const CooccurrenceTable& table = model.table;
  std::string out;
  out.reserve(64 + vocab.size() * 24 + table.pair_entries() * 16);
  out += kMagic;
  out += '\n';
  out += "meta\twindow\t" + std::to_string(table.window()) + "\n";
  out += "meta\tmin_count\t" + std::to_string(table.min_count()) + "\n";
  out += "meta\ttotal_tokens\t" + std::to_string(vocab.total_tokens()) + "\n";
  out += "vocab\t" + std::to_string(vocab.size()) + "\n";
  for (WordId id = 0; id < vocab.size(); ++id) {
    out += vocab.token(id);
    out += '\t';
    out += std::to_string(id);
    out += '\t';
    out += std::to_string(vocab.frequency(id));
    out += '\n';
  }
  out += "pairs\t" + std::to_string(table.pair_entries()) + "\n";
  for (WordId target = 0; target < table.num_targets(); ++target) {
    for (const auto& entry : table.row(target)) {
      out += std::to_string(target);
      out += '\t';
      out += std::to_string(entry.context);
      out += '\t';
      out += std::to_string(entry.count);
      out += '\n';
    }
  }
  out += "trailer\t" + std::to_string(out.size()) + "\t" +
         detail::hex64(detail::fnv1a64(out)) + "\n";
  return out;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view content) : content_(content) {}

  std::optional<std::string_view> next() {
    if (pos_ >= content_.size()) return std::nullopt;
    const std::size_t eol = content_.find('\n', pos_);
    if (eol == std::string_view::npos) {
      // A final unterminated line counts as truncation damage.
      pos_ = content_.size();
      return std::nullopt;
    }
    const std::string_view line = content_.substr(pos_, eol - pos_);
    pos_ = eol + 1;
    return line;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  std::string_view content_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint64_t parse_u64(std::string_view field, const char* what) {
  if (field.empty()) fail(Errc::ParseError, std::string("empty ") + what);
  std::uint64_t value = 0;
  for (char c : field) {
    if (c < '0' || c > '9') {
      fail(Errc::ParseError,
           std::string("non-numeric ") + what + ": " + std::string(field));
    }
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
      fail(Errc::ParseError, std::string("overflowing ") + what);
    }
    value = value * 10 + digit;
  }
  return value;
}

std::string_view expect_meta(LineReader& reader, std::string_view key) {
  const auto line = reader.next();
  if (!line) fail(Errc::Truncated, "model file ends before meta section");
  const auto fields = split_tabs(*line);
  if (fields.size() != 3 || fields[0] != "meta" || fields[1] != key) {
    fail(Errc::ParseError, "expected meta line '" + std::string(key) + "'");
  }
  return fields[2];
}

}  // namespace

CountModel parse_model(std::string_view content) {
  // Trailer first: the last newline-terminated line must carry the byte
  // length and FNV-1a checksum of everything before it.
  if (content.empty()) fail(Errc::Truncated, "empty model file");
  if (content.back() != '\n') fail(Errc::Truncated, "model file missing final newline");
  const std::size_t trailer_start = content.rfind('\n', content.size() - 2);
  const std::size_t body_size =
      trailer_start == std::string_view::npos ? 0 : trailer_start + 1;
  const std::string_view trailer_line =
      content.substr(body_size, content.size() - body_size - 1);
  const auto trailer_fields = split_tabs(trailer_line);
  if (trailer_fields.size() != 3 || trailer_fields[0] != "trailer") {
    fail(Errc::Truncated, "model file missing trailer line");
  }
  const std::uint64_t declared_length = parse_u64(trailer_fields[1], "trailer length");
  if (body_size < declared_length) {
    fail(Errc::Truncated, "model file shorter than trailer declares");
  }
  if (body_size > declared_length) {
    fail(Errc::ChecksumMismatch, "model file longer than trailer declares");
  }
  const std::string_view body = content.substr(0, body_size);
  const std::string checksum = detail::hex64(detail::fnv1a64(body));
  if (checksum != trailer_fields[2]) {
    fail(Errc::ChecksumMismatch, "model checksum mismatch: stored " +
                                     std::string(trailer_fields[2]) +
                                     ", computed " + checksum);
  }

  LineReader reader(body);
  const auto magic = reader.next();
  if (!magic) fail(Errc::Truncated, "model file ends before magic");
  if (*magic != kMagic) {
    fail(Errc::VersionMismatch,
         "unrecognized model magic: " + std::string(*magic));
  }
  const int window = static_cast<int>(parse_u64(expect_meta(reader, "window"), "window"));
  const auto min_count =
      static_cast<std::uint32_t>(parse_u64(expect_meta(reader, "min_count"), "min_count"));
  const std::uint64_t total_tokens =
      parse_u64(expect_meta(reader, "total_tokens"), "total_tokens");

  const auto vocab_header = reader.next();
  if (!vocab_header) fail(Errc::Truncated, "model file ends before vocabulary");
  const auto vocab_fields = split_tabs(*vocab_header);
  if (vocab_fields.size() != 2 || vocab_fields[0] != "vocab") {
    fail(Errc::ParseError, "expected vocab section header");
  }
  const std::uint64_t vocab_size = parse_u64(vocab_fields[1], "vocab size");

  std::vector<std::string> tokens;
  std::vector<std::uint64_t> frequencies;
  tokens.reserve(vocab_size);
  frequencies.reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    const auto line = reader.next();
    if (!line) fail(Errc::Truncated, "vocabulary section ends early");
    const auto fields = split_tabs(*line);
    if (fields.size() != 3) fail(Errc::ParseError, "malformed vocabulary record");
    if (fields[0].empty()) fail(Errc::ParseError, "empty vocabulary token");
    const std::uint64_t id = parse_u64(fields[1], "vocabulary id");
    if (id != i) fail(Errc::ParseError, "vocabulary ids not dense and sorted");
    const std::uint64_t freq = parse_u64(fields[2], "vocabulary frequency");
    if (freq < std::max<std::uint32_t>(min_count, 1)) {
      fail(Errc::ParseError, "vocabulary frequency below min_count");
    }
    tokens.emplace_back(fields[0]);
    frequencies.push_back(freq);
  }

  const auto pairs_header = reader.next();
  if (!pairs_header) fail(Errc::Truncated, "model file ends before pairs");
  const auto pair_fields = split_tabs(*pairs_header);
  if (pair_fields.size() != 2 || pair_fields[0] != "pairs") {
    fail(Errc::ParseError, "expected pairs section header");
  }
  const std::uint64_t pair_count = parse_u64(pair_fields[1], "pair count");

  std::vector<std::uint64_t> row_offsets(vocab_size + 1, 0);
  std::vector<CooccurrenceTable::Entry> entries;
  entries.reserve(pair_count);
  std::uint64_t previous_key = 0;
  for (std::uint64_t i = 0; i < pair_count; ++i) {
    const auto line = reader.next();
    if (!line) fail(Errc::Truncated, "pairs section ends early");
    const auto fields = split_tabs(*line);
    if (fields.size() != 3) fail(Errc::ParseError, "malformed pair record");
    const std::uint64_t target = parse_u64(fields[0], "pair target");
    const std::uint64_t context = parse_u64(fields[1], "pair context");
    const std::uint64_t value = parse_u64(fields[2], "pair count");
    if (target >= vocab_size || context >= vocab_size) {
      fail(Errc::ParseError, "pair id out of vocabulary range");
    }
    if (value == 0 || value > std::numeric_limits<std::uint32_t>::max()) {
      fail(Errc::ParseError, "pair count out of range");
    }
    const std::uint64_t key = (target << 32) | context;
    if (i > 0 && key <= previous_key) {
      fail(Errc::ParseError, "pairs not sorted by (target, context)");
    }
    previous_key = key;
    entries.push_back({static_cast<WordId>(context), static_cast<std::uint32_t>(value)});
    ++row_offsets[target + 1];
  }
  for (std::size_t r = 0; r < vocab_size; ++r) row_offsets[r + 1] += row_offsets[r];

  if (reader.position() != body.size()) {
    fail(Errc::ParseError, "unexpected content after pairs section");
  }
  if (window < 1) fail(Errc::ParseError, "stored window out of range");

  Vocabulary vocab(std::move(tokens), std::move(frequencies), total_tokens);
  return CountModel{std::move(vocab),
                    CooccurrenceTable(window, std::max<std::uint32_t>(min_count, 1),
                                      vocab_size, std::move(row_offsets),
                                      std::move(entries))};
}

void save_model(const std::string& path, const CountModel& model) {
  const std::string content = serialize_model(model);
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
    fail(Errc::Io, "cannot move model into place: " + path);
  }
}

CountModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open model file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::Io, "read failed: " + path);
  return parse_model(content);
}

}  // namespace hyperlex
