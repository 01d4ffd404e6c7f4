#include "fts/ctfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::topics {

ClassTermCounts build_class_counts(const std::vector<textprep::TokenDoc>& docs,
                                   const std::vector<int>& labels,
                                   const textprep::StopwordList& stopwords, CountOptions opts) {
  if (docs.size() != labels.size()) throw Error(Errc::DimensionMismatch, "docs vs labels");
  std::map<std::string, std::size_t> df;
  std::set<int> classes;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (labels[i] < 0) continue;
    classes.insert(labels[i]);
    std::set<std::string> seen;
    for (const auto& t : docs[i].tokens) {
      if (!stopwords.contains(t) && seen.insert(t).second) ++df[t];
    }
  }
  ClassTermCounts out;
  std::map<std::string, std::size_t> index;
  for (const auto& [t, n] : df) {
    if (n >= opts.min_df) {
      index.emplace(t, out.vocab.size());
      out.vocab.push_back(t);
    }
  }
  out.classes.assign(classes.begin(), classes.end());
  std::map<int, std::size_t> class_row;
  for (std::size_t c = 0; c < out.classes.size(); ++c) class_row[out.classes[c]] = c;
  out.counts.assign(out.classes.size(), std::vector<double>(out.vocab.size(), 0.0));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (labels[i] < 0) continue;
    auto& row = out.counts[class_row[labels[i]]];
    for (const auto& t : docs[i].tokens) {
      if (auto it = index.find(t); it != index.end()) row[it->second] += 1.0;
    }
  }
  return out;
}

ClassWeights ctfidf(const ClassTermCounts& counts, const keywords::KeywordList* seeds,
                    CtfidfOptions opts) {
  ClassWeights w = counts;
  const std::size_t n_terms = counts.vocab.size();
  const std::size_t n_classes = counts.classes.size();
  if (n_classes == 0) return w;

  std::vector<double> freq(n_terms, 0.0);
  double total = 0.0;
  for (const auto& row : counts.counts) {
    for (std::size_t t = 0; t < n_terms; ++t) {
      freq[t] += row[t];
      total += row[t];
    }
  }
  const double avg = total / static_cast<double>(n_classes);

  for (auto& row : w.counts) {
    for (std::size_t t = 0; t < n_terms; ++t) {
      if (freq[t] <= 0.0 || row[t] <= 0.0) {
        row[t] = 0.0;
        continue;
      }
      const double ratio = avg / freq[t];
      const double tf = opts.reduce_frequent ? std::sqrt(row[t] * ratio) : row[t];
      row[t] = tf * std::log(1.0 + ratio);
    }
  }
  if (seeds != nullptr) {
    for (std::size_t t = 0; t < n_terms; ++t) {
      if (!seeds->is_keyword(w.vocab[t])) continue;
      for (auto& row : w.counts) row[t] *= opts.seed_multiplier;
    }
  }
  return w;
}

std::vector<std::pair<std::string, double>> top_k_row(const std::vector<std::string>& vocab,
                                                      const std::vector<double>& row, std::size_t k) {
  std::vector<std::size_t> idx;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] > 0.0) idx.push_back(t);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return vocab[a] < vocab[b];
  };
  const std::size_t take = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(), better);
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < take; ++i) out.emplace_back(vocab[idx[i]], row[idx[i]]);
  return out;
}

TopicRepresentation top_k_words(const ClassWeights& weights, std::size_t k) {
  TopicRepresentation out;
  for (std::size_t c = 0; c < weights.classes.size(); ++c) {
    TopicWords tw;
    tw.cluster = weights.classes[c];
    tw.words = top_k_row(weights.vocab, weights.counts[c], k);
    tw.short_list = tw.words.size() < k;
    out.push_back(std::move(tw));
  }
  return out;
}

std::vector<std::vector<std::string>> word_lists(const TopicRepresentation& topics) {
  std::vector<std::vector<std::string>> out;
  out.reserve(topics.size());
  for (const auto& t : topics) {
    std::vector<std::string> words;
    for (const auto& [w, _] : t.words) words.push_back(w);
    out.push_back(std::move(words));
  }
  return out;
}

void write_topics(const TopicRepresentation& topics, const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : topics) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& [w, v] : t.words) words.push_back({w, v});
    arr.push_back({{"cluster", t.cluster}, {"words", words}, {"short", t.short_list}});
  }
  io::write_json(path, {{"topics", arr}});
}

TopicRepresentation read_topics(const std::filesystem::path& path) {
  TopicRepresentation out;
  const auto j = io::read_json(path);
  for (const auto& t : j.at("topics")) {
    TopicWords tw;
    tw.cluster = t.at("cluster").get<int>();
    tw.short_list = t.value("short", false);
    for (const auto& w : t.at("words")) tw.words.emplace_back(w.at(0).get<std::string>(), w.at(1).get<double>());
    out.push_back(std::move(tw));
  }
  return out;
}

}  // namespace fts::topics
