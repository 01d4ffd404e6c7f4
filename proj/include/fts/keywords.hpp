#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fts::keywords {

struct Topic {
  std::string name;
  std::vector<std::string> keywords;
};

// Per-topic match counts, indexed like KeywordList::topics().
using TopicCounts = std::vector<int>;

// Topic domains with their curated keywords. Construction rejects duplicate
// topic names, non-lowercase keywords and any keyword that is a prefix of
// another keyword anywhere in the list (KeywordCollision).
class KeywordList {
 public:
  KeywordList() = default;
  explicit KeywordList(std::vector<Topic> topics);

  // The bundled 14-domain financial list.
  static KeywordList financial();
  // JSON: {"topics": [{"name": ..., "keywords": [...]}, ...]}
  static KeywordList load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  const std::vector<Topic>& topics() const noexcept { return topics_; }
  std::size_t size() const noexcept { return topics_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::string& name(std::size_t topic) const { return topics_.at(topic).name; }

  // Exact keyword membership.
  bool is_keyword(std::string_view token) const;
  // Topics having at least one keyword that is a substring of `word`.
  std::vector<std::size_t> topics_of_word(std::string_view word) const;

 private:
  std::vector<Topic> topics_;
  std::set<std::string, std::less<>> all_;
};

// Counts keyword hits over the whitespace-split, lowercased words of a
// sentence. A word counts at most once per topic.
TopicCounts match_keywords(std::string_view sentence, const KeywordList& keywords);

// Same rule over an already-tokenized word list.
TopicCounts match_words(const std::vector<std::string>& words, const KeywordList& keywords);

// T iff counts[T] >= 2 and every other topic has zero hits.
std::optional<std::size_t> label_sentence(const TopicCounts& counts);

// T iff counts[T] >= 2 and every other topic has at most one hit; two
// qualifying topics cancel each other out.
std::optional<std::size_t> dominant_topic(const TopicCounts& counts);

// Looser rule for under-represented topics: counts[T] >= 1 and at most one
// hit from all other topics combined. Only topics in `relaxed` qualify.
std::optional<std::size_t> relaxed_label(const TopicCounts& counts,
                                         const std::set<std::size_t>& relaxed);

}  // namespace fts::keywords
