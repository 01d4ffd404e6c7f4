#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fts {

enum class SentenceInput { Sentences, Refined };

struct PipelineConfig {
  struct Paths {
    std::filesystem::path manifest;
    std::filesystem::path keywords;  // empty: bundled list
    std::vector<std::filesystem::path> stopwords;
    std::filesystem::path lemmas;
    std::filesystem::path vectors;
    std::filesystem::path reduced_vectors;  // optional external reduction
  } paths;

  // corpus filters
  std::size_t min_words = 250;
  double zscore = 2.0;
  int first_year = 2016;
  int last_year = 2022;

  // text preparation
  std::size_t sentence_min_words = 5;
  std::size_t sentence_max_words = 50;
  std::size_t phrase_min_count = 5;
  double phrase_threshold = 10.0;
  double doc_min_df = 0.02;
  double doc_max_df = 0.99;
  double tfidf_floor = 0.1;
  double cosine_floor = 0.6;
  SentenceInput input = SentenceInput::Sentences;

  // labeling
  std::vector<std::string> relaxed_topics = {"Litigation", "Covid-19"};
  double train_fraction = 0.8;

  // reduction and clustering
  std::size_t n_components = 10;
  std::size_t min_cluster_size = 1250;
  std::size_t min_samples = 10;

  // topic representation
  double seed_multiplier = 50.0;
  bool reduce_frequent = true;
  std::size_t top_k = 5;
  std::size_t vectorizer_min_df = 10;

  // evaluation
  std::size_t window = 20;
  std::size_t nmf_window = 10;

  // NMF baseline
  bool nmf_enabled = true;
  std::vector<std::size_t> nmf_candidate_ks = {14};
  std::size_t nmf_max_iters = 300;
  double nmf_tol = 1e-5;
  std::size_t nmf_min_df = 5;

  std::uint64_t rng_seed = 42;

  // Reads the JSON config; relative paths resolve against its directory.
  // FTS_MANIFEST, FTS_KEYWORDS, FTS_STOPWORDS (':'-separated), FTS_LEMMAS,
  // FTS_VECTORS and FTS_REDUCED_VECTORS override the path entries.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base);
  void apply_env_overrides();

  nlohmann::json to_json() const;
  // Throws ConfigInvalid on out-of-range thresholds or missing files.
  void validate() const;
};

std::string to_string(SentenceInput input);

}  // namespace fts
