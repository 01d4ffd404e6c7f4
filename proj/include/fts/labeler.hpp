#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fts/keywords.hpp"
#include "fts/textprep.hpp"

namespace fts::labeler {

struct LabeledSentence {
  std::string key;
  std::string text;
  std::string label;
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t test = 0;
};

struct LabeledDataset {
  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> test;
  std::map<std::string, SplitCounts> per_topic;
};

// Labels each sentence by the exclusive two-keyword rule, or by the relaxed
// rule for topics named in `relaxed_topics`. Sentences are deduplicated on
// cleaned text, keeping the first occurrence.
std::vector<LabeledSentence> build_labeled_dataset(const std::vector<textprep::Sentence>& sentences,
                                                   const keywords::KeywordList& keywords,
                                                   const std::set<std::string>& relaxed_topics);

// Per topic, ceil(train_fraction * n) sentences go to train after a seeded
// shuffle; the rest go to test. Output lists keep the input order.
LabeledDataset split_topicwise(const std::vector<LabeledSentence>& dataset, double train_fraction,
                               std::uint64_t seed);

std::size_t train_size(std::size_t n, double train_fraction);

void write_labeled(const std::vector<LabeledSentence>& rows, const std::filesystem::path& path);
std::vector<LabeledSentence> read_labeled(const std::filesystem::path& path);
void write_split(const LabeledDataset& ds, const std::filesystem::path& dir);

}  // namespace fts::labeler
