#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fts/corpus.hpp"
#include "fts/keywords.hpp"

namespace fts::textprep {

struct Sentence {
  std::string doc_id;
  std::size_t index = 0;
  std::string raw;
  std::string cleaned;
  std::size_t word_count = 0;

  std::string key() const { return doc_id + "#" + std::to_string(index); }
};

struct TokenDoc {
  std::string key;
  std::vector<std::string> tokens;
};

struct VocabEntry {
  std::size_t df = 0;
  std::size_t cf = 0;
  double tfidf_norm = 0.0;
};

using Vocabulary = std::map<std::string, VocabEntry>;

// Rule-based splitter on terminal punctuation and blank lines; periods that
// close a known abbreviation or an initialism ("U.S.") do not end a sentence.
std::vector<Sentence> segment_sentences(const corpus::Document& doc);

// Expands contractions, drops URL tokens and digits, collapses whitespace.
std::string clean_sentence(std::string_view raw);

std::vector<Sentence> filter_sentence_length(std::vector<Sentence> sents, std::size_t min_words = 5,
                                             std::size_t max_words = 50);

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}
  // One entry per line; blank lines and '#' comments skipped; lowercased.
  static StopwordList load(const std::filesystem::path& path);
  // Union of several list files.
  static StopwordList load_all(const std::vector<std::filesystem::path>& paths);

  bool contains(std::string_view w) const { return words_.count(std::string(w)) != 0; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Dictionary lemmatizer with a conservative suffix fallback for words of at
// least five characters.
class LemmaTable {
 public:
  LemmaTable() = default;
  explicit LemmaTable(std::unordered_map<std::string, std::string> entries);
  // TSV: surface<TAB>lemma per line.
  static LemmaTable load(const std::filesystem::path& path);

  // `known` extends the set of recognised base forms used by the -ed/-ing
  // fallback (typically the keyword list).
  std::string lemmatize(std::string_view word, const keywords::KeywordList* known = nullptr) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::unordered_map<std::string, std::string> table_;
  std::unordered_set<std::string> lemmas_;
};

// Lowercase word tokens, lemmatized, stopwords removed. Keyword-list tokens
// are never dropped.
TokenDoc normalize_tokens(std::string_view text, const StopwordList& stopwords,
                          const LemmaTable& lemmas, const keywords::KeywordList& keywords,
                          std::string key = {});

// Collocation score used for phrase joining:
// (count_ab - min_count) * total_tokens / (count_a * count_b).
double phrase_score(std::size_t count_a, std::size_t count_b, std::size_t count_ab,
                    std::size_t total_tokens, std::size_t min_count);

// One joining pass: adjacent pairs with count >= min_count and
// score >= threshold are merged left to right into "a_b".
std::vector<TokenDoc> join_phrases(const std::vector<TokenDoc>& corpus, std::size_t min_count,
                                   double threshold);

// Two joining passes (bigrams, then trigrams).
std::vector<TokenDoc> detect_phrases(const std::vector<TokenDoc>& corpus, std::size_t min_count,
                                     double threshold);

struct ExtremesResult {
  std::vector<TokenDoc> docs;
  Vocabulary vocab;
};

// Keeps tokens with document fraction in [min_df, max_df] and max normalized
// tf-idf >= tfidf_floor; keyword tokens always survive.
ExtremesResult filter_token_extremes(const std::vector<TokenDoc>& corpus, double min_df,
                                     double max_df, double tfidf_floor,
                                     const keywords::KeywordList& keywords);

// Mean cosine of each document's tf-idf vector against every other document.
std::vector<double> mean_cosines(const std::vector<TokenDoc>& corpus);

corpus::Filtered<TokenDoc> cosine_document_filter(const std::vector<TokenDoc>& corpus,
                                                  double threshold = 0.6);

// Keeps keyword-bearing sentences plus their neighbours (index +-1, same
// document). Input order is preserved.
std::vector<Sentence> refine_sentences_by_keyword(const std::vector<Sentence>& sents,
                                                  const keywords::KeywordList& keywords);

void write_sentences(const std::vector<Sentence>& sents, const std::filesystem::path& path);
std::vector<Sentence> read_sentences(const std::filesystem::path& path);

void write_token_docs(const std::vector<TokenDoc>& docs, const std::filesystem::path& path);
std::vector<TokenDoc> read_token_docs(const std::filesystem::path& path);

}  // namespace fts::textprep
