#include "fts/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::textprep {

namespace {

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) noexcept { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) noexcept { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  for (auto w : split_ws(s)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr.",   "mrs.",  "ms.",  "dr.",   "prof.", "inc.",  "corp.", "co.",  "ltd.",  "llc.",
      "plc.",  "no.",   "nos.", "vs.",   "e.g.",  "i.e.",  "approx.", "est.", "dept.", "fig.",
      "st.",   "jr.",   "sr.",  "jan.",  "feb.",  "mar.",  "apr.",  "jun.", "jul.",  "aug.",
      "sep.",  "sept.", "oct.", "nov.",  "dec.",  "u.s.",  "u.k.",  "u.n.", "n.a.",  "s.a.",
      "cf.",   "al.",   "ref.", "sec.",  "art.",  "vol.",  "pp.",   "mgmt."};
  return kAbbrev;
}

// "u.s.", "e.u." or a single initial such as "j.".
bool is_initialism(std::string_view tok) {
  if (tok.size() < 2 || tok.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < tok.size(); i += 2) {
    if (!is_alpha(tok[i]) || tok[i + 1] != '.') return false;
  }
  return true;
}

bool ends_abbreviation(std::string_view text, std::size_t period) {
  std::size_t b = period;
  while (b > 0 && !is_space(text[b - 1])) --b;
  std::string_view tok = text.substr(b, period - b + 1);
  while (!tok.empty() && (tok.front() == '(' || tok.front() == '"' || tok.front() == '\'')) {
    tok.remove_prefix(1);
  }
  const std::string low = to_lower(tok);
  return abbreviations().count(low) != 0 || is_initialism(low);
}

bool is_closer(char c) noexcept { return c == ')' || c == '"' || c == '\'' || c == ']'; }

const std::unordered_map<std::string, std::string>& contractions() {
  static const std::unordered_map<std::string, std::string> kTable = {
      {"don't", "do not"},        {"doesn't", "does not"},   {"didn't", "did not"},
      {"can't", "cannot"},        {"cannot", "cannot"},      {"won't", "will not"},
      {"wouldn't", "would not"},  {"shouldn't", "should not"}, {"couldn't", "could not"},
      {"isn't", "is not"},        {"aren't", "are not"},     {"wasn't", "was not"},
      {"weren't", "were not"},    {"hasn't", "has not"},     {"haven't", "have not"},
      {"hadn't", "had not"},      {"mustn't", "must not"},   {"needn't", "need not"},
      {"shan't", "shall not"},    {"ain't", "is not"},       {"it's", "it is"},
      {"that's", "that is"},      {"there's", "there is"},   {"here's", "here is"},
      {"what's", "what is"},      {"let's", "let us"},       {"he's", "he is"},
      {"she's", "she is"},        {"i'm", "i am"},           {"we're", "we are"},
      {"they're", "they are"},    {"you're", "you are"},     {"we've", "we have"},
      {"they've", "they have"},   {"i've", "i have"},        {"you've", "you have"},
      {"we'll", "we will"},       {"they'll", "they will"},  {"it'll", "it will"},
      {"i'll", "i will"},         {"you'll", "you will"},    {"we'd", "we would"},
      {"they'd", "they would"},   {"i'd", "i would"},        {"it'd", "it would"},
      {"y'all", "you all"}};
  return kTable;
}

// Expands a single token if it (minus trailing punctuation) is a contraction.
std::string expand_contraction(std::string_view tok) {
  std::size_t end = tok.size();
  while (end > 0 && !is_alpha(tok[end - 1])) --end;
  const std::string core = to_lower(tok.substr(0, end));
  const std::string_view tail = tok.substr(end);

  std::string expanded;
  if (auto it = contractions().find(core); it != contractions().end()) {
    expanded = it->second;
  } else if (core.size() > 3 && core.ends_with("n't")) {
    expanded = core.substr(0, core.size() - 3) + " not";
  } else if (core.size() > 3 && core.ends_with("'re")) {
    expanded = core.substr(0, core.size() - 3) + " are";
  } else if (core.size() > 3 && core.ends_with("'ve")) {
    expanded = core.substr(0, core.size() - 3) + " have";
  } else if (core.size() > 3 && core.ends_with("'ll")) {
    expanded = core.substr(0, core.size() - 3) + " will";
  } else {
    return std::string(tok);
  }
  if (!tok.empty() && std::isupper(static_cast<unsigned char>(tok[0]))) {
    expanded[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(expanded[0])));
  }
  return expanded + std::string(tail);
}

bool is_url(std::string_view tok) {
  std::string_view t = tok;
  while (!t.empty() && (t.front() == '(' || t.front() == '<' || t.front() == '"')) t.remove_prefix(1);
  const std::string low = to_lower(t.substr(0, std::min<std::size_t>(t.size(), 5)));
  return low.starts_with("http") || low.starts_with("www.");
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// Word tokens for normalization: runs of letters/digits plus internal '&',
// '-' and '_'.
std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && (cur.back() == '-' || cur.back() == '&' || cur.back() == '_')) cur.pop_back();
    std::size_t b = 0;
    while (b < cur.size() && (cur[b] == '-' || cur[b] == '&' || cur[b] == '_')) ++b;
    if (b > 0) cur.erase(0, b);
    if (std::any_of(cur.begin(), cur.end(), is_alpha)) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (is_alpha(c) || is_digit(c) || c == '&' || c == '-' || c == '_') {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (c == '\'' && !cur.empty()) {
      // possessive / apostrophe: drop the rest of the clitic
      flush();
    } else {
      flush();
    }
  }
  flush();
  return out;
}

// Smoothed idf: ln((1 + n) / (1 + df)) + 1.
double smoothed_idf(std::size_t n_docs, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

using SparseVec = std::vector<std::pair<std::size_t, double>>;

// L2-normalized tf-idf rows over a vocabulary index built from the corpus.
std::vector<SparseVec> tfidf_rows(const std::vector<TokenDoc>& corpus, std::size_t& vocab_size) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::size_t> df;
  std::vector<std::map<std::size_t, std::size_t>> counts(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (const auto& t : corpus[d].tokens) {
      auto [it, inserted] = index.emplace(t, index.size());
      if (inserted) df.push_back(0);
      if (counts[d][it->second]++ == 0) ++df[it->second];
    }
  }
  vocab_size = index.size();
  std::vector<SparseVec> rows(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    double norm = 0.0;
    for (auto [term, tf] : counts[d]) {
      const double w = static_cast<double>(tf) * smoothed_idf(corpus.size(), df[term]);
      rows[d].emplace_back(term, w);
      norm += w * w;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& e : rows[d]) e.second /= norm;
    }
  }
  return rows;
}

}  // namespace

std::string clean_sentence(std::string_view raw) {
  const std::string text = replace_all(replace_all(std::string(raw), "\xE2\x80\x99", "'"),
                                       "\xE2\x80\x98", "'");
  std::string out;
  for (auto tok : split_ws(text)) {
    std::string stripped;
    bool had_digit = false;
    for (char c : tok) {
      if (is_digit(c)) {
        had_digit = true;
      } else {
        stripped += c;
      }
    }
    if (had_digit && std::none_of(stripped.begin(), stripped.end(), is_alpha)) continue;
    if (stripped.empty() || is_url(stripped)) continue;
    const std::string expanded = expand_contraction(stripped);
    if (!out.empty()) out += ' ';
    out += expanded;
  }
  return out;
}

std::vector<Sentence> segment_sentences(const corpus::Document& doc) {
  const std::string_view text = doc.text;
  std::vector<Sentence> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string raw = collapse_ws(text.substr(start, end - start));
    if (!raw.empty()) {
      Sentence s;
      s.doc_id = doc.id;
      s.index = out.size();
      s.cleaned = clean_sentence(raw);
      s.word_count = corpus::count_words(s.cleaned);
      s.raw = std::move(raw);
      out.push_back(std::move(s));
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        emit(i);
        start = j + 1;
        i = j + 1;
        continue;
      }
    } else if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && is_closer(text[j])) ++j;
      if (j == text.size() || is_space(text[j])) {
        bool boundary = true;
        if (c == '.' && ends_abbreviation(text, i)) boundary = false;
        std::size_t k = j;
        while (k < text.size() && is_space(text[k])) ++k;
        if (k < text.size() && std::islower(static_cast<unsigned char>(text[k]))) boundary = false;
        if (boundary) {
          emit(j);
          start = j;
          i = j;
          continue;
        }
      }
    }
    ++i;
  }
  emit(text.size());
  return out;
}

std::vector<Sentence> filter_sentence_length(std::vector<Sentence> sents, std::size_t min_words,
                                             std::size_t max_words) {
  std::erase_if(sents, [&](const Sentence& s) {
    return s.word_count < min_words || s.word_count > max_words;
  });
  return sents;
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  return load_all({path});
}

StopwordList StopwordList::load_all(const std::vector<std::filesystem::path>& paths) {
  std::unordered_set<std::string> words;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw Error(Errc::IoError, "cannot open stopword list " + p.string());
    std::string line;
    while (std::getline(in, line)) {
      // Loughran-McDonald style lists carry "WORD | comment" annotations.
      if (auto bar = line.find('|'); bar != std::string::npos) line.resize(bar);
      const std::string w = to_lower(collapse_ws(line));
      if (w.empty() || w[0] == '#') continue;
      words.insert(w);
    }
  }
  return StopwordList(std::move(words));
}

LemmaTable::LemmaTable(std::unordered_map<std::string, std::string> entries)
    : table_(std::move(entries)) {
  for (const auto& [surface, lemma] : table_) lemmas_.insert(lemma);
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open lemma table " + path.string());
  std::unordered_map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    std::string surface = to_lower(collapse_ws(line.substr(0, tab)));
    std::string lemma = to_lower(collapse_ws(line.substr(tab + 1)));
    if (!surface.empty() && !lemma.empty()) entries.emplace(std::move(surface), std::move(lemma));
  }
  return LemmaTable(std::move(entries));
}

std::string LemmaTable::lemmatize(std::string_view word, const keywords::KeywordList* known) const {
  const std::string w(word);
  if (auto it = table_.find(w); it != table_.end()) return it->second;
  if (w.size() < 5) return w;

  auto is_known = [&](const std::string& stem) {
    return lemmas_.count(stem) != 0 || table_.count(stem) != 0 ||
           (known != nullptr && known->is_keyword(stem));
  };

  if (w.ends_with("ing") || w.ends_with("ed")) {
    const std::size_t cut = w.ends_with("ing") ? 3 : 2;
    const std::string stem = w.substr(0, w.size() - cut);
    if (stem.size() >= 3) {
      if (is_known(stem)) return stem;
      if (is_known(stem + "e")) return stem + "e";
      if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
          is_known(stem.substr(0, stem.size() - 1))) {
        return stem.substr(0, stem.size() - 1);
      }
    }
    return w;
  }
  if (w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.ends_with("sses") || w.ends_with("ches") || w.ends_with("shes") || w.ends_with("xes") ||
      w.ends_with("zes")) {
    return w.substr(0, w.size() - 2);
  }
  if (w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

TokenDoc normalize_tokens(std::string_view text, const StopwordList& stopwords,
                          const LemmaTable& lemmas, const keywords::KeywordList& keywords,
                          std::string key) {
  TokenDoc doc;
  doc.key = std::move(key);
  for (auto& tok : word_tokens(text)) {
    if (keywords.is_keyword(tok)) {
      doc.tokens.push_back(std::move(tok));
      continue;
    }
    std::string lemma = lemmas.lemmatize(tok, &keywords);
    if (keywords.is_keyword(lemma)) {
      doc.tokens.push_back(std::move(lemma));
      continue;
    }
    if (stopwords.contains(tok) || stopwords.contains(lemma) || lemma.size() < 2) continue;
    doc.tokens.push_back(std::move(lemma));
  }
  return doc;
}

double phrase_score(std::size_t count_a, std::size_t count_b, std::size_t count_ab,
                    std::size_t total_tokens, std::size_t min_count) {
  if (count_a == 0 || count_b == 0) return 0.0;
  return (static_cast<double>(count_ab) - static_cast<double>(min_count)) *
         static_cast<double>(total_tokens) /
         (static_cast<double>(count_a) * static_cast<double>(count_b));
}

std::vector<TokenDoc> join_phrases(const std::vector<TokenDoc>& corpus, std::size_t min_count,
                                   double threshold) {
  std::unordered_map<std::string, std::size_t> unigram;
  std::map<std::pair<std::string, std::string>, std::size_t> bigram;
  std::size_t total = 0;
  for (const auto& d : corpus) {
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      ++unigram[d.tokens[i]];
      ++total;
      if (i + 1 < d.tokens.size()) ++bigram[{d.tokens[i], d.tokens[i + 1]}];
    }
  }
  auto qualifies = [&](const std::string& a, const std::string& b) {
    auto it = bigram.find({a, b});
    if (it == bigram.end() || it->second < min_count) return false;
    return phrase_score(unigram[a], unigram[b], it->second, total, min_count) >= threshold;
  };

  std::vector<TokenDoc> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus) {
    TokenDoc joined{d.key, {}};
    std::size_t i = 0;
    while (i < d.tokens.size()) {
      if (i + 1 < d.tokens.size() && qualifies(d.tokens[i], d.tokens[i + 1])) {
        joined.tokens.push_back(d.tokens[i] + "_" + d.tokens[i + 1]);
        i += 2;
      } else {
        joined.tokens.push_back(d.tokens[i]);
        ++i;
      }
    }
    out.push_back(std::move(joined));
  }
  return out;
}

std::vector<TokenDoc> detect_phrases(const std::vector<TokenDoc>& corpus, std::size_t min_count,
                                     double threshold) {
  return join_phrases(join_phrases(corpus, min_count, threshold), min_count, threshold);
}

ExtremesResult filter_token_extremes(const std::vector<TokenDoc>& corpus, double min_df,
                                     double max_df, double tfidf_floor,
                                     const keywords::KeywordList& keywords) {
  if (!(min_df >= 0.0 && max_df <= 1.0 && min_df < max_df) || tfidf_floor < 0.0 ||
      tfidf_floor > 1.0) {
    throw Error(Errc::InvalidParams, "token extreme thresholds out of range");
  }
  Vocabulary stats;
  for (const auto& d : corpus) {
    std::map<std::string, std::size_t> tf;
    for (const auto& t : d.tokens) ++tf[t];
    for (const auto& [t, n] : tf) {
      auto& e = stats[t];
      ++e.df;
      e.cf += n;
    }
  }
  const std::size_t n_docs = corpus.size();
  for (const auto& d : corpus) {
    std::map<std::string, std::size_t> tf;
    for (const auto& t : d.tokens) ++tf[t];
    double norm = 0.0;
    std::vector<std::pair<const std::string*, double>> w;
    for (const auto& [t, n] : tf) {
      const double v = static_cast<double>(n) * smoothed_idf(n_docs, stats[t].df);
      w.emplace_back(&t, v);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto [t, v] : w) {
      auto& e = stats[*t];
      e.tfidf_norm = std::max(e.tfidf_norm, norm > 0.0 ? v / norm : 0.0);
    }
  }

  ExtremesResult result;
  for (const auto& [t, e] : stats) {
    const double frac = static_cast<double>(e.df) / static_cast<double>(n_docs);
    const bool keep = keywords.is_keyword(t) ||
                      (frac >= min_df && frac <= max_df && e.tfidf_norm >= tfidf_floor);
    if (keep) result.vocab.emplace(t, e);
  }
  if (result.vocab.empty()) throw Error(Errc::EmptyVocabulary, "no token survived filtering");
  result.docs.reserve(corpus.size());
  for (const auto& d : corpus) {
    TokenDoc kept{d.key, {}};
    for (const auto& t : d.tokens) {
      if (result.vocab.count(t) != 0) kept.tokens.push_back(t);
    }
    result.docs.push_back(std::move(kept));
  }
  return result;
}

std::vector<double> mean_cosines(const std::vector<TokenDoc>& corpus) {
  std::size_t vocab_size = 0;
  const auto rows = tfidf_rows(corpus, vocab_size);
  std::vector<double> total(vocab_size, 0.0);
  for (const auto& r : rows) {
    for (auto [t, w] : r) total[t] += w;
  }
  std::vector<double> means(corpus.size(), 0.0);
  if (corpus.size() < 2) return means;
  const double others = static_cast<double>(corpus.size() - 1);
  for (std::size_t d = 0; d < rows.size(); ++d) {
    if (rows[d].empty()) continue;
    double dot_all = 0.0;
    double self = 0.0;
    for (auto [t, w] : rows[d]) {
      dot_all += w * total[t];
      self += w * w;
    }
    means[d] = (dot_all - self) / others;
  }
  return means;
}

corpus::Filtered<TokenDoc> cosine_document_filter(const std::vector<TokenDoc>& corpus,
                                                  double threshold) {
  corpus::Filtered<TokenDoc> out;
  out.stage.name = "cosine";
  if (corpus.size() < 2) {
    out.kept = corpus;
    out.stage.kept = out.kept.size();
    return out;
  }
  const auto means = mean_cosines(corpus);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    if (means[d] >= threshold) {
      out.kept.push_back(corpus[d]);
    } else {
      ++out.stage.dropped;
    }
  }
  out.stage.kept = out.kept.size();
  return out;
}

std::vector<Sentence> refine_sentences_by_keyword(const std::vector<Sentence>& sents,
                                                  const keywords::KeywordList& keywords) {
  std::set<std::pair<std::string, std::size_t>> keep;
  for (const auto& s : sents) {
    const auto counts = keywords::match_keywords(s.cleaned, keywords);
    if (std::any_of(counts.begin(), counts.end(), [](int c) { return c > 0; })) {
      keep.insert({s.doc_id, s.index});
      if (s.index > 0) keep.insert({s.doc_id, s.index - 1});
      keep.insert({s.doc_id, s.index + 1});
    }
  }
  std::vector<Sentence> out;
  for (const auto& s : sents) {
    if (keep.count({s.doc_id, s.index}) != 0) out.push_back(s);
  }
  return out;
}

void write_sentences(const std::vector<Sentence>& sents, const std::filesystem::path& path) {
  std::vector<nlohmann::json> rows;
  rows.reserve(sents.size());
  for (const auto& s : sents) {
    rows.push_back({{"doc_id", s.doc_id}, {"index", s.index}, {"raw", s.raw},
                    {"cleaned", s.cleaned}, {"word_count", s.word_count}});
  }
  io::write_jsonl(path, rows);
}

std::vector<Sentence> read_sentences(const std::filesystem::path& path) {
  std::vector<Sentence> out;
  for (const auto& r : io::read_jsonl(path)) {
    out.push_back({r.at("doc_id").get<std::string>(), r.at("index").get<std::size_t>(),
                   r.at("raw").get<std::string>(), r.at("cleaned").get<std::string>(),
                   r.at("word_count").get<std::size_t>()});
  }
  return out;
}

void write_token_docs(const std::vector<TokenDoc>& docs, const std::filesystem::path& path) {
  std::vector<nlohmann::json> rows;
  rows.reserve(docs.size());
  for (const auto& d : docs) rows.push_back({{"key", d.key}, {"tokens", d.tokens}});
  io::write_jsonl(path, rows);
}

std::vector<TokenDoc> read_token_docs(const std::filesystem::path& path) {
  std::vector<TokenDoc> out;
  for (const auto& r : io::read_jsonl(path)) {
    out.push_back({r.at("key").get<std::string>(), r.at("tokens").get<std::vector<std::string>>()});
  }
  return out;
}

}  // namespace fts::textprep
