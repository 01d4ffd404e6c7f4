#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fts/keywords.hpp"
#include "fts/textprep.hpp"

namespace fts::topics {

// Token counts per cluster over a shared, sorted vocabulary. Noise rows are
// never counted.
struct ClassTermCounts {
  std::vector<std::string> vocab;
  std::vector<int> classes;                 // cluster ids, ascending
  std::vector<std::vector<double>> counts;  // [class][term]
};

using ClassWeights = ClassTermCounts;

struct CountOptions {
  // Tokens present in fewer non-noise documents than this are dropped.
  std::size_t min_df = 10;
};

// `labels[i]` is the cluster of `docs[i]`; -1 marks noise.
ClassTermCounts build_class_counts(const std::vector<textprep::TokenDoc>& docs,
                                   const std::vector<int>& labels,
                                   const textprep::StopwordList& stopwords, CountOptions opts = {});

struct CtfidfOptions {
  double seed_multiplier = 50.0;
  bool reduce_frequent = true;
};

// W[t,c] = tf[t,c] * log(1 + A / f_t) with A the mean token count per class
// and f_t the token's total count. With reduce_frequent, tf is first replaced
// by sqrt(tf * A / f_t). Exact keyword-list tokens (when `seeds` is given) are
// multiplied by seed_multiplier afterwards.
ClassWeights ctfidf(const ClassTermCounts& counts, const keywords::KeywordList* seeds,
                    CtfidfOptions opts = {});

struct TopicWords {
  int cluster = 0;
  std::vector<std::pair<std::string, double>> words;  // descending weight
  bool short_list = false;                            // fewer than k positive weights
};

using TopicRepresentation = std::vector<TopicWords>;

// The k highest positive weights per class; ties go to the lexicographically
// smaller token.
TopicRepresentation top_k_words(const ClassWeights& weights, std::size_t k = 5);

// Ranks a single weight row; shared by c-tf-idf and NMF topics.
std::vector<std::pair<std::string, double>> top_k_row(const std::vector<std::string>& vocab,
                                                      const std::vector<double>& row, std::size_t k);

// Plain word lists, in rank order.
std::vector<std::vector<std::string>> word_lists(const TopicRepresentation& topics);

void write_topics(const TopicRepresentation& topics, const std::filesystem::path& path);
TopicRepresentation read_topics(const std::filesystem::path& path);

}  // namespace fts::topics
