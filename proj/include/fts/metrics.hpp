#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fts/ctfidf.hpp"
#include "fts/keywords.hpp"
#include "fts/textprep.hpp"
#include "fts/vectors.hpp"

namespace fts::metrics {

struct CoherenceConfig {
  std::size_t window_size = 20;
  std::size_t top_k = 5;
  double epsilon = 1e-12;

  bool valid() const noexcept { return window_size >= 2 && top_k >= 2 && epsilon > 0.0; }
};

// Window occurrence counts for a fixed word set. Documents shorter than the
// window form a single window; longer ones give len - window + 1 windows.
struct WindowCounts {
  std::size_t windows = 0;
  std::vector<std::string> words;                  // sorted, unique
  std::vector<std::size_t> single;                 // per word
  std::vector<std::vector<std::size_t>> joint;     // symmetric

  std::optional<std::size_t> index_of(const std::string& w) const;
};

WindowCounts count_windows(const std::vector<textprep::TokenDoc>& corpus,
                           const std::vector<std::string>& words, std::size_t window_size);

// log((P(a,b) + eps) / (P(a) P(b))) / -log(P(a,b) + eps)
double npmi(std::size_t count_a, std::size_t count_b, std::size_t count_ab, std::size_t windows,
            double epsilon);

struct CoherenceResult {
  std::vector<double> per_topic;
  double mean = 0.0;
  std::vector<std::string> missing_words;  // topic words absent from the corpus
};

// Topic score is the mean NPMI over all unordered pairs of its first top_k
// words; the model score is the mean over topics.
CoherenceResult npmi_coherence(const std::vector<std::vector<std::string>>& topics,
                               const std::vector<textprep::TokenDoc>& corpus,
                               const CoherenceConfig& cfg = {});

struct TopicPrecision {
  std::optional<std::size_t> dominant;
  int true_positives = 0;
  int false_positives = 0;
  double precision = 0.0;
};

struct PrecisionResult {
  std::vector<TopicPrecision> per_topic;
  std::vector<double> per_domain;  // one entry per keyword domain, 0 if not captured
  double model = 0.0;
};

TopicPrecision topic_precision(const std::vector<std::string>& words,
                               const keywords::KeywordList& keywords);

// Averages over the keyword domains; a domain captured by several topics
// scores the mean of their precisions.
PrecisionResult topic_precision(const std::vector<std::vector<std::string>>& topics,
                                const keywords::KeywordList& keywords);

struct SimilarityResult {
  std::map<int, double> per_topic;
  double model = 0.0;
};

// Mean of the L2-normalized member embeddings per label, so that scores do
// not depend on member norms; noise rows (label < 0) skipped.
std::map<int, std::vector<double>> centroids(const vectors::EmbeddingMatrix& embeddings,
                                             const std::vector<int>& labels);

SimilarityResult intratopic_similarity(const vectors::EmbeddingMatrix& embeddings,
                                       const std::vector<int>& labels);

// Mean of the strict upper triangle of the centroid cosine matrix.
double intertopic_similarity(const vectors::EmbeddingMatrix& embeddings, const std::vector<int>& labels);

enum class Weighting { Multiply, Divide };

double weight_by_precision(double raw, double precision, Weighting kind);

// One model's row of the report. Weighted fields are derived from the raw
// ones and the model precision; nullopt marks a value that could not be
// computed (for example intertopic with fewer than two topics).
struct MetricsReport {
  std::string model;
  std::string input;
  std::optional<double> npmi_raw;
  std::optional<double> topic_precision;
  std::optional<double> intratopic_raw;
  std::optional<double> intertopic_raw;
  std::size_t outlier_count = 0;
  std::vector<double> npmi_per_topic;
  std::vector<double> precision_per_domain;
  std::map<int, double> intratopic_per_topic;

  std::optional<double> npmi_weighted() const;
  std::optional<double> intratopic_weighted() const;
  // +inf when precision is zero.
  std::optional<double> intertopic_weighted() const;
};

}  // namespace fts::metrics
