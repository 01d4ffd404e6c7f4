#include "fts/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::labeler {

std::vector<LabeledSentence> build_labeled_dataset(const std::vector<textprep::Sentence>& sentences,
                                                   const keywords::KeywordList& keywords,
                                                   const std::set<std::string>& relaxed_topics) {
  std::set<std::size_t> relaxed;
  for (const auto& name : relaxed_topics) {
    if (auto idx = keywords.index_of(name)) relaxed.insert(*idx);
  }
  std::unordered_set<std::string> seen;
  std::vector<LabeledSentence> out;
  for (const auto& s : sentences) {
    const auto counts = keywords::match_keywords(s.cleaned, keywords);
    auto label = keywords::label_sentence(counts);
    if (!label) label = keywords::relaxed_label(counts, relaxed);
    if (!label) continue;
    if (!seen.insert(s.cleaned).second) continue;
    out.push_back({s.key(), s.cleaned, keywords.name(*label)});
  }
  return out;
}

std::size_t train_size(std::size_t n, double train_fraction) {
  // The epsilon keeps exact products such as 0.8 * 10 from rounding up.
  const double target = train_fraction * static_cast<double>(n) - 1e-9;
  return std::min(n, static_cast<std::size_t>(std::max(0.0, std::ceil(target))));
}

LabeledDataset split_topicwise(const std::vector<LabeledSentence>& dataset, double train_fraction,
                               std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(Errc::InvalidParams, "train_fraction must lie in (0, 1)");
  }
  std::map<std::string, std::vector<std::size_t>> by_topic;
  for (std::size_t i = 0; i < dataset.size(); ++i) by_topic[dataset[i].label].push_back(i);

  std::vector<bool> in_train(dataset.size(), false);
  LabeledDataset ds;
  std::mt19937_64 rng(seed);
  for (auto& [topic, rows] : by_topic) {
    if (rows.size() < 2) {
      throw Error(Errc::TopicTooSmall, topic + " has " + std::to_string(rows.size()) + " sentence");
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    const std::size_t n_train = train_size(rows.size(), train_fraction);
    for (std::size_t k = 0; k < n_train; ++k) in_train[rows[k]] = true;
    ds.per_topic[topic] = {n_train, rows.size() - n_train};
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (in_train[i] ? ds.train : ds.test).push_back(dataset[i]);
  }
  return ds;
}

void write_labeled(const std::vector<LabeledSentence>& rows, const std::filesystem::path& path) {
  std::vector<nlohmann::json> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({{"key", r.key}, {"text", r.text}, {"label", r.label}});
  io::write_jsonl(path, out);
}

std::vector<LabeledSentence> read_labeled(const std::filesystem::path& path) {
  std::vector<LabeledSentence> out;
  for (const auto& r : io::read_jsonl(path)) {
    out.push_back({r.at("key").get<std::string>(), r.at("text").get<std::string>(),
                   r.at("label").get<std::string>()});
  }
  return out;
}

void write_split(const LabeledDataset& ds, const std::filesystem::path& dir) {
  write_labeled(ds.train, dir / "train.jsonl");
  write_labeled(ds.test, dir / "test.jsonl");
  nlohmann::json topics = nlohmann::json::object();
  for (const auto& [name, c] : ds.per_topic) topics[name] = {{"train", c.train}, {"test", c.test}};
  io::write_json(dir / "counts.json",
                 {{"train", ds.train.size()}, {"test", ds.test.size()}, {"topics", topics}});
}

}  // namespace fts::labeler
