#include "fts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "fts/error.hpp"

namespace fts::metrics {

std::optional<std::size_t> WindowCounts::index_of(const std::string& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - words.begin());
}

WindowCounts count_windows(const std::vector<textprep::TokenDoc>& corpus,
                           const std::vector<std::string>& words, std::size_t window_size) {
  if (window_size < 1) throw Error(Errc::InvalidParams, "window size must be positive");
  WindowCounts wc;
  wc.words = words;
  std::sort(wc.words.begin(), wc.words.end());
  wc.words.erase(std::unique(wc.words.begin(), wc.words.end()), wc.words.end());
  const std::size_t n = wc.words.size();
  wc.single.assign(n, 0);
  wc.joint.assign(n, std::vector<std::size_t>(n, 0));

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(wc.words[i], i);

  std::vector<std::size_t> in_window(n, 0);
  std::vector<std::size_t> present;
  auto tally = [&] {
    present.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (in_window[i] > 0) present.push_back(i);
    }
    ++wc.windows;
    for (std::size_t a = 0; a < present.size(); ++a) {
      ++wc.single[present[a]];
      for (std::size_t b = a + 1; b < present.size(); ++b) {
        ++wc.joint[present[a]][present[b]];
        ++wc.joint[present[b]][present[a]];
      }
    }
  };

  for (const auto& doc : corpus) {
    const auto& toks = doc.tokens;
    if (toks.empty()) continue;
    std::vector<std::ptrdiff_t> ids(toks.size(), -1);
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (auto it = index.find(toks[i]); it != index.end()) ids[i] = static_cast<std::ptrdiff_t>(it->second);
    }
    std::fill(in_window.begin(), in_window.end(), 0);
    const std::size_t first = std::min(window_size, toks.size());
    for (std::size_t i = 0; i < first; ++i) {
      if (ids[i] >= 0) ++in_window[static_cast<std::size_t>(ids[i])];
    }
    tally();
    for (std::size_t start = 1; start + window_size <= toks.size(); ++start) {
      if (ids[start - 1] >= 0) --in_window[static_cast<std::size_t>(ids[start - 1])];
      const std::size_t last = start + window_size - 1;
      if (ids[last] >= 0) ++in_window[static_cast<std::size_t>(ids[last])];
      tally();
    }
  }
  return wc;
}

double npmi(std::size_t count_a, std::size_t count_b, std::size_t count_ab, std::size_t windows,
            double epsilon) {
  if (windows == 0 || count_a == 0 || count_b == 0) return -1.0;
  const double total = static_cast<double>(windows);
  if (count_ab == windows) return 1.0;  // every window holds both words
  const double pa = static_cast<double>(count_a) / total;
  const double pb = static_cast<double>(count_b) / total;
  const double pab = static_cast<double>(count_ab) / total + epsilon;
  return std::log(pab / (pa * pb)) / -std::log(pab);
}

CoherenceResult npmi_coherence(const std::vector<std::vector<std::string>>& topics,
                               const std::vector<textprep::TokenDoc>& corpus,
                               const CoherenceConfig& cfg) {
  if (!cfg.valid()) throw Error(Errc::InvalidParams, "coherence config out of range");
  const bool any_tokens = std::any_of(corpus.begin(), corpus.end(),
                                      [](const textprep::TokenDoc& d) { return !d.tokens.empty(); });
  if (!any_tokens) throw Error(Errc::EmptyCorpus, "no tokens to slide windows over");

  std::vector<std::string> all;
  for (const auto& t : topics) {
    for (std::size_t i = 0; i < std::min(cfg.top_k, t.size()); ++i) all.push_back(t[i]);
  }
  const auto wc = count_windows(corpus, all, cfg.window_size);

  CoherenceResult res;
  std::set<std::string> missing;
  for (const auto& t : topics) {
    const std::size_t k = std::min(cfg.top_k, t.size());
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto a = *wc.index_of(t[i]);
      if (wc.single[a] == 0) missing.insert(t[i]);
      for (std::size_t j = i + 1; j < k; ++j) {
        const auto b = *wc.index_of(t[j]);
        const std::size_t joint = a == b ? wc.single[a] : wc.joint[a][b];
        sum += npmi(wc.single[a], wc.single[b], joint, wc.windows, cfg.epsilon);
        ++pairs;
      }
    }
    res.per_topic.push_back(pairs > 0 ? sum / static_cast<double>(pairs) : 0.0);
  }
  if (!res.per_topic.empty()) {
    double s = 0.0;
    for (double v : res.per_topic) s += v;
    res.mean = s / static_cast<double>(res.per_topic.size());
  }
  res.missing_words.assign(missing.begin(), missing.end());
  return res;
}

TopicPrecision topic_precision(const std::vector<std::string>& words,
                               const keywords::KeywordList& keywords) {
  const auto counts = keywords::match_words(words, keywords);
  TopicPrecision tp;
  tp.dominant = keywords::dominant_topic(counts);
  if (!tp.dominant) return tp;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    (t == *tp.dominant ? tp.true_positives : tp.false_positives) += counts[t];
  }
  tp.precision = static_cast<double>(tp.true_positives) /
                 static_cast<double>(tp.true_positives + tp.false_positives);
  return tp;
}

PrecisionResult topic_precision(const std::vector<std::vector<std::string>>& topics,
                                const keywords::KeywordList& keywords) {
  PrecisionResult res;
  std::vector<double> sum(keywords.size(), 0.0);
  std::vector<std::size_t> hits(keywords.size(), 0);
  for (const auto& words : topics) {
    auto tp = topic_precision(words, keywords);
    if (tp.dominant) {
      sum[*tp.dominant] += tp.precision;
      ++hits[*tp.dominant];
    }
    res.per_topic.push_back(tp);
  }
  res.per_domain.assign(keywords.size(), 0.0);
  double total = 0.0;
  for (std::size_t d = 0; d < keywords.size(); ++d) {
    if (hits[d] > 0) res.per_domain[d] = sum[d] / static_cast<double>(hits[d]);
    total += res.per_domain[d];
  }
  res.model = keywords.size() > 0 ? total / static_cast<double>(keywords.size()) : 0.0;
  return res;
}

std::map<int, std::vector<double>> centroids(const vectors::EmbeddingMatrix& embeddings,
                                             const std::vector<int>& labels) {
  if (labels.size() != embeddings.rows()) throw Error(Errc::DimensionMismatch, "labels vs rows");
  std::map<int, std::vector<double>> sums;
  std::map<int, std::size_t> sizes;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0) continue;
    auto& acc = sums[labels[r]];
    acc.resize(embeddings.dim, 0.0);
    const auto row = embeddings.row(r);
    double norm = 0.0;
    for (float v : row) norm += static_cast<double>(v) * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error(Errc::ZeroVector, "zero embedding " + embeddings.keys[r]);
    for (std::size_t i = 0; i < row.size(); ++i) acc[i] += row[i] / norm;
    ++sizes[labels[r]];
  }
  for (auto& [label, acc] : sums) {
    for (auto& v : acc) v /= static_cast<double>(sizes[label]);
  }
  return sums;
}

namespace {

void require_nonzero(const std::map<int, std::vector<double>>& cents) {
  for (const auto& [label, c] : cents) {
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) {
      throw Error(Errc::ZeroVector, "centroid of topic " + std::to_string(label) + " is zero");
    }
  }
}

}  // namespace

SimilarityResult intratopic_similarity(const vectors::EmbeddingMatrix& embeddings,
                                       const std::vector<int>& labels) {
  const auto cents = centroids(embeddings, labels);
  require_nonzero(cents);
  std::map<int, double> sums;
  std::map<int, std::size_t> sizes;
  std::vector<double> member(embeddings.dim);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0) continue;
    const auto row = embeddings.row(r);
    std::copy(row.begin(), row.end(), member.begin());
    sums[labels[r]] += vectors::cosine(std::span<const double>(member), cents.at(labels[r]));
    ++sizes[labels[r]];
  }
  SimilarityResult res;
  double total = 0.0;
  for (const auto& [label, s] : sums) {
    res.per_topic[label] = s / static_cast<double>(sizes[label]);
    total += res.per_topic[label];
  }
  if (!res.per_topic.empty()) res.model = total / static_cast<double>(res.per_topic.size());
  return res;
}

double intertopic_similarity(const vectors::EmbeddingMatrix& embeddings, const std::vector<int>& labels) {
  const auto cents = centroids(embeddings, labels);
  if (cents.size() < 2) throw Error(Errc::TooFewTopics, std::to_string(cents.size()) + " topic(s)");
  require_nonzero(cents);
  std::vector<const std::vector<double>*> list;
  for (const auto& [label, c] : cents) list.push_back(&c);
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      sum += vectors::cosine(std::span<const double>(*list[i]), std::span<const double>(*list[j]));
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

double weight_by_precision(double raw, double precision, Weighting kind) {
  if (!(precision >= 0.0 && precision <= 1.0)) {
    throw Error(Errc::InvalidParams, "precision outside [0, 1]");
  }
  if (kind == Weighting::Multiply) return raw * precision;
  if (precision == 0.0) {
    throw Error(Errc::DivideByZeroPrecision, "unsuitable for financial analysis");
  }
  return raw / precision;
}

std::optional<double> MetricsReport::npmi_weighted() const {
  if (!npmi_raw || !topic_precision) return std::nullopt;
  return weight_by_precision(*npmi_raw, *topic_precision, Weighting::Multiply);
}

std::optional<double> MetricsReport::intratopic_weighted() const {
  if (!intratopic_raw || !topic_precision) return std::nullopt;
  return weight_by_precision(*intratopic_raw, *topic_precision, Weighting::Multiply);
}

std::optional<double> MetricsReport::intertopic_weighted() const {
  if (!intertopic_raw || !topic_precision) return std::nullopt;
  if (*topic_precision == 0.0) return std::numeric_limits<double>::infinity();
  return weight_by_precision(*intertopic_raw, *topic_precision, Weighting::Divide);
}

}  // namespace fts::metrics
