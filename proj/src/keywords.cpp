#include "fts/keywords.hpp"

#include <algorithm>
#include <cctype>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::keywords {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

KeywordList::KeywordList(std::vector<Topic> topics) : topics_(std::move(topics)) {
  std::set<std::string, std::less<>> names;
  for (const auto& t : topics_) {
    if (t.name.empty()) throw Error(Errc::InvalidParams, "empty topic name");
    if (!names.insert(t.name).second) throw Error(Errc::InvalidParams, "duplicate topic " + t.name);
    for (const auto& k : t.keywords) {
      if (k.empty()) throw Error(Errc::InvalidParams, "empty keyword in " + t.name);
      if (k != to_lower(k)) throw Error(Errc::InvalidParams, "keyword not lowercase: " + k);
      if (!all_.insert(k).second) throw Error(Errc::KeywordCollision, "duplicate keyword " + k);
    }
  }
  // Sorted order puts every prefix directly before some word it prefixes.
  for (auto it = all_.begin(); it != all_.end(); ++it) {
    auto next = std::next(it);
    if (next != all_.end() && next->starts_with(*it)) {
      throw Error(Errc::KeywordCollision, "'" + *it + "' is a prefix of '" + *next + "'");
    }
  }
}

KeywordList KeywordList::financial() {
  return KeywordList({
      {"Sales", {"sale", "revenue", "market", "consumer", "demand", "competition", "pricing",
                 "contract", "price"}},
      {"Cost", {"cost", "expense", "liability", "goodwill", "impairment", "depreciate",
                "depreciation"}},
      {"Profit/Loss", {"profit", "performance", "result", "margin", "income", "earnings", "loss",
                       "management", "ebda", "ebit"}},
      {"Operations", {"operation", "production", "business", "produce", "supply", "process",
                      "manufacturing", "manufacture", "logistic", "transport", "advertising",
                      "advertise"}},
      {"Liquidity", {"liquidity", "interest", "coverage", "cash", "capital", "balance", "excess"}},
      {"Investment", {"expenditure", "m&a", "divestiture", "invest", "asset", "disposal",
                      "divestment"}},
      {"Financing", {"financing", "finance", "debt", "equity", "dividend", "repurchase", "share",
                     "funding", "security", "indebtness", "indebtedness", "borrowing", "credit"}},
      {"Litigation", {"litigation", "lawsuit", "legal", "matter", "dispute", "complaint",
                      "arbitration", "patent"}},
      {"HR", {"employee", "retention", "hiring", "hire", "union", "consultant", "staff", "recruit",
              "labor", "incentive", "insurance", "team", "training", "salary", "wage", "job",
              "work"}},
      {"Regulation", {"regulation", "tax", "government", "legislation", "federal", "regulator",
                      "regulate"}},
      {"Accounting", {"account", "audit", "control", "adjustment", "filing", "report"}},
      {"Energy", {"energy", "coal", "solar", "fuel", "wind", "water", "electric", "oil",
                  "megawatts", "mwh", "megawatthours", "kilowatts", "kwh", "kilowatthours",
                  "gigawatts", "gwh", "gigawatthours"}},
      {"ESG", {"plastic", "recycle", "waste", "carbon", "emission", "renewable", "environment",
               "sustain", "ecologic"}},
      {"Covid-19", {"covid", "cov-19", "pandemic", "disease", "corona", "sars-cov"}},
  });
}

KeywordList KeywordList::load(const std::filesystem::path& path) {
  const auto j = io::read_json(path);
  std::vector<Topic> topics;
  try {
    for (const auto& t : j.at("topics")) {
      topics.push_back({t.at("name").get<std::string>(),
                        t.at("keywords").get<std::vector<std::string>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigInvalid, path.string() + ": " + e.what());
  }
  return KeywordList(std::move(topics));
}

void KeywordList::save(const std::filesystem::path& path) const {
  nlohmann::json topics = nlohmann::json::array();
  for (const auto& t : topics_) topics.push_back({{"name", t.name}, {"keywords", t.keywords}});
  io::write_json(path, {{"topics", topics}});
}

std::optional<std::size_t> KeywordList::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < topics_.size(); ++i) {
    if (topics_[i].name == name) return i;
  }
  return std::nullopt;
}

bool KeywordList::is_keyword(std::string_view token) const {
  return all_.find(token) != all_.end();
}

std::vector<std::size_t> KeywordList::topics_of_word(std::string_view word) const {
  std::vector<std::size_t> hits;
  for (std::size_t t = 0; t < topics_.size(); ++t) {
    for (const auto& k : topics_[t].keywords) {
      if (word.find(k) != std::string_view::npos) {
        hits.push_back(t);
        break;
      }
    }
  }
  return hits;
}

TopicCounts match_words(const std::vector<std::string>& words, const KeywordList& keywords) {
  TopicCounts counts(keywords.size(), 0);
  for (const auto& w : words) {
    for (auto t : keywords.topics_of_word(w)) ++counts[t];
  }
  return counts;
}

TopicCounts match_keywords(std::string_view sentence, const KeywordList& keywords) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[j]))) ++j;
    if (j > i) words.push_back(to_lower(sentence.substr(i, j - i)));
    i = j;
  }
  return match_words(words, keywords);
}

std::optional<std::size_t> label_sentence(const TopicCounts& counts) {
  std::optional<std::size_t> label;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] == 0) continue;
    if (label) return std::nullopt;  // a second domain has hits
    label = t;
  }
  if (label && counts[*label] >= 2) return label;
  return std::nullopt;
}

std::optional<std::size_t> dominant_topic(const TopicCounts& counts) {
  std::optional<std::size_t> found;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] < 2) continue;
    bool others_small = true;
    for (std::size_t u = 0; u < counts.size(); ++u) {
      if (u != t && counts[u] > 1) {
        others_small = false;
        break;
      }
    }
    if (!others_small) continue;
    if (found) return std::nullopt;
    found = t;
  }
  return found;
}

std::optional<std::size_t> relaxed_label(const TopicCounts& counts,
                                         const std::set<std::size_t>& relaxed) {
  int total = 0;
  for (int c : counts) total += c;
  std::optional<std::size_t> found;
  for (auto t : relaxed) {
    if (t >= counts.size() || counts[t] < 1) continue;
    if (total - counts[t] > 1) continue;
    if (found) return std::nullopt;
    found = t;
  }
  return found;
}

}  // namespace fts::keywords
