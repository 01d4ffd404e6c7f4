#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fts::corpus {

struct RawFiling {
  std::string id;
  int fiscal_year = 0;
  std::string body;
};

struct Document {
  std::string id;
  int fiscal_year = 0;
  std::string text;
  std::size_t word_count = 0;
};

struct FunnelStage {
  std::string name;
  std::size_t kept = 0;
  std::size_t dropped = 0;
};

// Per-stage document accounting. Stages are appended in execution order and
// each stage's kept + dropped must equal the previous stage's kept.
struct FunnelReport {
  std::size_t input = 0;
  std::vector<FunnelStage> stages;

  void add(FunnelStage stage);
  std::size_t retained() const noexcept;
  // True when every stage telescopes onto the previous one.
  bool consistent() const noexcept;
};

template <class T>
struct Filtered {
  std::vector<T> kept;
  FunnelStage stage;
};

// Whitespace-delimited token count on raw text.
std::size_t count_words(std::string_view text) noexcept;

enum class ItemKind { Item7, Item7A, Item8 };

struct ItemHeading {
  ItemKind kind;
  std::size_t offset;  // byte offset of the line start of the heading
};

// All "ITEM 7 / 7A / 8" headings found at line starts, in document order.
std::vector<ItemHeading> find_item_headings(std::string_view body);

// Span from the last Item 7 heading that still precedes an Item 8 heading up
// to the first Item 8 heading after it. The Item 7 heading line is included.
Document extract_item7(const RawFiling& filing);

Filtered<Document> filter_min_words(std::vector<Document> docs, std::size_t min_words = 250);

// Drops documents whose word count lies strictly more than `threshold`
// population standard deviations from the mean. Mean and deviation are
// computed once over the input. Zero deviation keeps everything.
Filtered<Document> filter_zscore(std::vector<Document> docs, double threshold = 2.0);

Filtered<Document> filter_year(std::vector<Document> docs, int first = 2016, int last = 2022);

// Extraction over a batch: failing filings are counted as dropped.
Filtered<Document> extract_all(const std::vector<RawFiling>& filings);

struct ManifestEntry {
  std::string id;
  int fiscal_year = 0;
  std::string path;
};

// JSON-lines manifest: {"id", "fiscal_year", "path"} with paths relative to
// the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);
std::vector<RawFiling> load_filings(const std::filesystem::path& manifest);

void write_documents(const std::vector<Document>& docs, const std::filesystem::path& path);
std::vector<Document> read_documents(const std::filesystem::path& path);

void write_funnel(const FunnelReport& funnel, const std::filesystem::path& path);
FunnelReport read_funnel(const std::filesystem::path& path);

}  // namespace fts::corpus
