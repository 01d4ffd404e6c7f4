#include "fts/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::corpus {

namespace {

bool is_space(char c) noexcept {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) noexcept {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Parses "ITEM" + separators + number at `pos` (a line start). Returns the
// heading kind when the line opens with an Item 7, 7A or 8 heading.
std::optional<ItemKind> parse_heading(std::string_view body, std::size_t pos) {
  std::size_t i = pos;
  while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
  static constexpr std::string_view kItem = "item";
  if (body.size() - i < kItem.size()) return std::nullopt;
  for (std::size_t k = 0; k < kItem.size(); ++k) {
    if (lower(body[i + k]) != kItem[k]) return std::nullopt;
  }
  i += kItem.size();
  while (i < body.size() && body[i] != '\n' &&
         (is_space(body[i]) || body[i] == '.' || body[i] == ':' || body[i] == '-' ||
          body[i] == '_' || body[i] == '#')) {
    ++i;
  }
  if (i >= body.size()) return std::nullopt;
  const char digit = body[i];
  if (digit != '7' && digit != '8') return std::nullopt;
  ++i;
  if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) return std::nullopt;
  if (digit == '8') {
    return ItemKind::Item8;
  }
  if (i < body.size() && lower(body[i]) == 'a') {
    // "7A" but not "7Affiliates"-style run-on words.
    if (i + 1 >= body.size() || !std::isalpha(static_cast<unsigned char>(body[i + 1]))) {
      return ItemKind::Item7A;
    }
    return std::nullopt;
  }
  if (i < body.size() && std::isalpha(static_cast<unsigned char>(body[i]))) return std::nullopt;
  return ItemKind::Item7;
}

std::string_view trim(std::string_view s) noexcept {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

void FunnelReport::add(FunnelStage stage) { stages.push_back(std::move(stage)); }

std::size_t FunnelReport::retained() const noexcept {
  return stages.empty() ? input : stages.back().kept;
}

bool FunnelReport::consistent() const noexcept {
  std::size_t prev = input;
  for (const auto& s : stages) {
    if (s.kept + s.dropped != prev) return false;
    prev = s.kept;
  }
  return true;
}

std::size_t count_words(std::string_view text) noexcept {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::vector<ItemHeading> find_item_headings(std::string_view body) {
  std::vector<ItemHeading> out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (auto kind = parse_heading(body, pos)) out.push_back({*kind, pos});
    const std::size_t nl = body.find('\n', pos);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

Document extract_item7(const RawFiling& filing) {
  const auto headings = find_item_headings(filing.body);

  std::optional<std::size_t> start;
  std::optional<std::size_t> end;
  bool any7 = false;
  // Walk backwards: the first Item 7 seen with an Item 8 somewhere after it is
  // the last Item 7 that precedes an Item 8.
  std::optional<std::size_t> next8;
  for (auto it = headings.rbegin(); it != headings.rend(); ++it) {
    if (it->kind == ItemKind::Item8) {
      next8 = it->offset;
    } else if (it->kind == ItemKind::Item7) {
      any7 = true;
      if (next8 && !start) {
        start = it->offset;
        end = next8;
      }
    }
  }
  if (!any7) throw Error(Errc::NoItem7Found, filing.id);
  if (!start) throw Error(Errc::NoItem8AfterItem7, filing.id);

  Document doc;
  doc.id = filing.id;
  doc.fiscal_year = filing.fiscal_year;
  doc.text = std::string(trim(std::string_view(filing.body).substr(*start, *end - *start)));
  doc.word_count = count_words(doc.text);
  return doc;
}

Filtered<Document> extract_all(const std::vector<RawFiling>& filings) {
  Filtered<Document> out;
  out.stage.name = "extraction";
  for (const auto& f : filings) {
    try {
      auto doc = extract_item7(f);
      if (doc.word_count == 0) {
        ++out.stage.dropped;
        continue;
      }
      out.kept.push_back(std::move(doc));
    } catch (const Error& e) {
      if (e.code() != Errc::NoItem7Found && e.code() != Errc::NoItem8AfterItem7) throw;
      ++out.stage.dropped;
    }
  }
  out.stage.kept = out.kept.size();
  return out;
}

Filtered<Document> filter_min_words(std::vector<Document> docs, std::size_t min_words) {
  Filtered<Document> out;
  out.stage.name = "min_words";
  for (auto& d : docs) {
    if (d.word_count >= min_words) {
      out.kept.push_back(std::move(d));
    } else {
      ++out.stage.dropped;
    }
  }
  out.stage.kept = out.kept.size();
  return out;
}

Filtered<Document> filter_zscore(std::vector<Document> docs, double threshold) {
  Filtered<Document> out;
  out.stage.name = "zscore";
  if (docs.size() < 2) {
    out.kept = std::move(docs);
    out.stage.kept = out.kept.size();
    return out;
  }
  double mean = 0.0;
  for (const auto& d : docs) mean += static_cast<double>(d.word_count);
  mean /= static_cast<double>(docs.size());
  double var = 0.0;
  for (const auto& d : docs) {
    const double dx = static_cast<double>(d.word_count) - mean;
    var += dx * dx;
  }
  var /= static_cast<double>(docs.size());
  const double sd = std::sqrt(var);

  for (auto& d : docs) {
    const double dev = std::abs(static_cast<double>(d.word_count) - mean);
    if (sd == 0.0 || dev <= threshold * sd) {
      out.kept.push_back(std::move(d));
    } else {
      ++out.stage.dropped;
    }
  }
  out.stage.kept = out.kept.size();
  return out;
}

Filtered<Document> filter_year(std::vector<Document> docs, int first, int last) {
  Filtered<Document> out;
  out.stage.name = "year";
  for (auto& d : docs) {
    if (d.fiscal_year >= first && d.fiscal_year <= last) {
      out.kept.push_back(std::move(d));
    } else {
      ++out.stage.dropped;
    }
  }
  out.stage.kept = out.kept.size();
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest) {
  std::vector<ManifestEntry> entries;
  for (const auto& row : io::read_jsonl(manifest)) {
    try {
      entries.push_back({row.at("id").get<std::string>(), row.at("fiscal_year").get<int>(),
                         row.at("path").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::IoError, manifest.string() + ": bad manifest record: " + e.what());
    }
  }
  return entries;
}

std::vector<RawFiling> load_filings(const std::filesystem::path& manifest) {
  const auto base = manifest.parent_path();
  std::vector<RawFiling> filings;
  for (auto& e : read_manifest(manifest)) {
    filings.push_back({e.id, e.fiscal_year, io::read_text(base / e.path)});
  }
  return filings;
}

void write_documents(const std::vector<Document>& docs, const std::filesystem::path& path) {
  std::vector<nlohmann::json> rows;
  rows.reserve(docs.size());
  for (const auto& d : docs) {
    rows.push_back({{"id", d.id}, {"fiscal_year", d.fiscal_year}, {"text", d.text},
                    {"word_count", d.word_count}});
  }
  io::write_jsonl(path, rows);
}

std::vector<Document> read_documents(const std::filesystem::path& path) {
  std::vector<Document> docs;
  for (const auto& row : io::read_jsonl(path)) {
    docs.push_back({row.at("id").get<std::string>(), row.at("fiscal_year").get<int>(),
                    row.at("text").get<std::string>(), row.at("word_count").get<std::size_t>()});
  }
  return docs;
}

void write_funnel(const FunnelReport& funnel, const std::filesystem::path& path) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : funnel.stages) {
    stages.push_back({{"stage", s.name}, {"kept", s.kept}, {"dropped", s.dropped}});
  }
  io::write_json(path, {{"input", funnel.input}, {"stages", stages}, {"retained", funnel.retained()}});
}

FunnelReport read_funnel(const std::filesystem::path& path) {
  const auto j = io::read_json(path);
  FunnelReport f;
  f.input = j.at("input").get<std::size_t>();
  for (const auto& s : j.at("stages")) {
    f.add({s.at("stage").get<std::string>(), s.at("kept").get<std::size_t>(),
           s.at("dropped").get<std::size_t>()});
  }
  return f;
}

}  // namespace fts::corpus
