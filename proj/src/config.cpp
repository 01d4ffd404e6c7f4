#include "fts/config.hpp"

#include <cstdlib>
#include <sstream>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::ConfigInvalid, what);
}

}  // namespace

std::string to_string(SentenceInput input) {
  return input == SentenceInput::Refined ? "refined" : "sentences";
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  auto cfg = from_json(io::read_json(path), std::filesystem::absolute(path).parent_path());
  cfg.apply_env_overrides();
  return cfg;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  PipelineConfig c;
  try {
    if (j.contains("paths")) {
      const auto& p = j.at("paths");
      c.paths.manifest = resolve(base, p.value("manifest", ""));
      c.paths.keywords = resolve(base, p.value("keywords", ""));
      c.paths.lemmas = resolve(base, p.value("lemmas", ""));
      c.paths.vectors = resolve(base, p.value("vectors", ""));
      c.paths.reduced_vectors = resolve(base, p.value("reduced_vectors", ""));
      if (p.contains("stopwords")) {
        for (const auto& s : p.at("stopwords")) c.paths.stopwords.push_back(resolve(base, s.get<std::string>()));
      }
    }
    if (j.contains("corpus")) {
      const auto& s = j.at("corpus");
      read_opt(s, "min_words", c.min_words);
      read_opt(s, "zscore", c.zscore);
      read_opt(s, "first_year", c.first_year);
      read_opt(s, "last_year", c.last_year);
    }
    if (j.contains("textprep")) {
      const auto& s = j.at("textprep");
      read_opt(s, "sentence_min_words", c.sentence_min_words);
      read_opt(s, "sentence_max_words", c.sentence_max_words);
      read_opt(s, "phrase_min_count", c.phrase_min_count);
      read_opt(s, "phrase_threshold", c.phrase_threshold);
      read_opt(s, "doc_min_df", c.doc_min_df);
      read_opt(s, "doc_max_df", c.doc_max_df);
      read_opt(s, "tfidf_floor", c.tfidf_floor);
      read_opt(s, "cosine_floor", c.cosine_floor);
      if (s.contains("input")) {
        const auto v = s.at("input").get<std::string>();
        require(v == "sentences" || v == "refined", "textprep.input must be sentences|refined");
        c.input = v == "refined" ? SentenceInput::Refined : SentenceInput::Sentences;
      }
    }
    if (j.contains("labels")) {
      const auto& s = j.at("labels");
      read_opt(s, "relaxed_topics", c.relaxed_topics);
      read_opt(s, "train_fraction", c.train_fraction);
    }
    if (j.contains("cluster")) {
      const auto& s = j.at("cluster");
      read_opt(s, "n_components", c.n_components);
      read_opt(s, "min_cluster_size", c.min_cluster_size);
      read_opt(s, "min_samples", c.min_samples);
    }
    if (j.contains("topics")) {
      const auto& s = j.at("topics");
      read_opt(s, "seed_multiplier", c.seed_multiplier);
      read_opt(s, "reduce_frequent", c.reduce_frequent);
      read_opt(s, "top_k", c.top_k);
      read_opt(s, "min_df", c.vectorizer_min_df);
    }
    if (j.contains("metrics")) {
      const auto& s = j.at("metrics");
      read_opt(s, "window", c.window);
      read_opt(s, "nmf_window", c.nmf_window);
    }
    if (j.contains("nmf")) {
      const auto& s = j.at("nmf");
      read_opt(s, "enabled", c.nmf_enabled);
      read_opt(s, "candidate_ks", c.nmf_candidate_ks);
      read_opt(s, "max_iters", c.nmf_max_iters);
      read_opt(s, "tol", c.nmf_tol);
      read_opt(s, "min_df", c.nmf_min_df);
    }
    read_opt(j, "rng_seed", c.rng_seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigInvalid, e.what());
  }
  return c;
}

void PipelineConfig::apply_env_overrides() {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("FTS_MANIFEST")) paths.manifest = *v;
  if (auto v = env("FTS_KEYWORDS")) paths.keywords = *v;
  if (auto v = env("FTS_LEMMAS")) paths.lemmas = *v;
  if (auto v = env("FTS_VECTORS")) paths.vectors = *v;
  if (auto v = env("FTS_REDUCED_VECTORS")) paths.reduced_vectors = *v;
  if (auto v = env("FTS_STOPWORDS")) {
    paths.stopwords.clear();
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ':')) {
      if (!item.empty()) paths.stopwords.emplace_back(item);
    }
  }
}

nlohmann::json PipelineConfig::to_json() const {
  std::vector<std::string> stop;
  for (const auto& s : paths.stopwords) stop.push_back(s.string());
  return {
      {"paths", {{"manifest", paths.manifest.string()}, {"keywords", paths.keywords.string()},
                 {"stopwords", stop}, {"lemmas", paths.lemmas.string()},
                 {"vectors", paths.vectors.string()}, {"reduced_vectors", paths.reduced_vectors.string()}}},
      {"corpus", {{"min_words", min_words}, {"zscore", zscore}, {"first_year", first_year},
                  {"last_year", last_year}}},
      {"textprep", {{"sentence_min_words", sentence_min_words}, {"sentence_max_words", sentence_max_words},
                    {"phrase_min_count", phrase_min_count}, {"phrase_threshold", phrase_threshold},
                    {"doc_min_df", doc_min_df}, {"doc_max_df", doc_max_df}, {"tfidf_floor", tfidf_floor},
                    {"cosine_floor", cosine_floor}, {"input", fts::to_string(input)}}},
      {"labels", {{"relaxed_topics", relaxed_topics}, {"train_fraction", train_fraction}}},
      {"cluster", {{"n_components", n_components}, {"min_cluster_size", min_cluster_size},
                   {"min_samples", min_samples}}},
      {"topics", {{"seed_multiplier", seed_multiplier}, {"reduce_frequent", reduce_frequent},
                  {"top_k", top_k}, {"min_df", vectorizer_min_df}}},
      {"metrics", {{"window", window}, {"nmf_window", nmf_window}}},
      {"nmf", {{"enabled", nmf_enabled}, {"candidate_ks", nmf_candidate_ks}, {"max_iters", nmf_max_iters},
               {"tol", nmf_tol}, {"min_df", nmf_min_df}}},
      {"rng_seed", rng_seed},
  };
}

void PipelineConfig::validate() const {
  require(!paths.manifest.empty(), "paths.manifest is required");
  auto exists = [](const std::filesystem::path& p, const char* what) {
    require(p.empty() || std::filesystem::exists(p), std::string(what) + " not found: " + p.string());
  };
  exists(paths.manifest, "manifest");
  exists(paths.keywords, "keyword list");
  exists(paths.lemmas, "lemma table");
  exists(paths.vectors, "vector file");
  exists(paths.reduced_vectors, "reduced vector file");
  for (const auto& s : paths.stopwords) exists(s, "stopword list");

  require(min_words >= 1, "min_words must be >= 1");
  require(zscore > 0.0, "zscore must be positive");
  require(first_year <= last_year && first_year >= 1000 && last_year <= 9999, "year window invalid");
  require(sentence_min_words >= 1 && sentence_min_words <= sentence_max_words, "sentence length bounds invalid");
  require(phrase_min_count >= 1, "phrase_min_count must be >= 1");
  require(doc_min_df >= 0.0 && doc_max_df <= 1.0 && doc_min_df < doc_max_df, "document df bounds invalid");
  require(tfidf_floor >= 0.0 && tfidf_floor <= 1.0, "tfidf_floor must lie in [0, 1]");
  require(cosine_floor >= -1.0 && cosine_floor <= 1.0, "cosine_floor must lie in [-1, 1]");
  require(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction must lie in (0, 1)");
  require(n_components >= 1, "n_components must be >= 1");
  require(min_cluster_size >= 2, "min_cluster_size must be >= 2");
  require(min_samples >= 1, "min_samples must be >= 1");
  require(seed_multiplier > 0.0, "seed_multiplier must be positive");
  require(top_k >= 2, "top_k must be >= 2");
  require(window >= 2 && nmf_window >= 2, "coherence windows must be >= 2");
  require(!nmf_candidate_ks.empty(), "nmf.candidate_ks must not be empty");
  for (auto k : nmf_candidate_ks) require(k >= 1, "nmf candidate k must be >= 1");
  require(nmf_tol >= 0.0, "nmf.tol must be nonnegative");
}

}  // namespace fts
