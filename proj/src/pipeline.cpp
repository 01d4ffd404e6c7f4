#include "fts/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include <openssl/evp.h>

#include "fts/cluster.hpp"
#include "fts/corpus.hpp"
#include "fts/ctfidf.hpp"
#include "fts/error.hpp"
#include "fts/io.hpp"
#include "fts/keywords.hpp"
#include "fts/labeler.hpp"
#include "fts/metrics.hpp"
#include "fts/nmf.hpp"
#include "fts/reduce.hpp"
#include "fts/report.hpp"
#include "fts/textprep.hpp"
#include "fts/vectors.hpp"

namespace fts::pipeline {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<Stage, const char*>>& stage_names() {
  static const std::vector<std::pair<Stage, const char*>> names = {
      {Stage::Ingest, "ingest"}, {Stage::Prep, "prep"},       {Stage::Label, "label"},
      {Stage::Split, "split"},   {Stage::Reduce, "reduce"},   {Stage::Cluster, "cluster"},
      {Stage::Topics, "topics"}, {Stage::Metrics, "metrics"}, {Stage::Report, "report"},
  };
  return names;
}

// Shared resources loaded once per run.
struct Resources {
  keywords::KeywordList keywords;
  textprep::StopwordList stopwords;
  textprep::LemmaTable lemmas;
};

Resources load_resources(const PipelineConfig& cfg) {
  Resources r;
  r.keywords = cfg.paths.keywords.empty() ? keywords::KeywordList::financial()
                                          : keywords::KeywordList::load(cfg.paths.keywords);
  r.stopwords = textprep::StopwordList::load_all(cfg.paths.stopwords);
  if (!cfg.paths.lemmas.empty()) r.lemmas = textprep::LemmaTable::load(cfg.paths.lemmas);
  return r;
}

class Run {
 public:
  Run(const PipelineConfig& cfg, fs::path dir) : cfg_(cfg), dir_(std::move(dir)), res_(load_resources(cfg)) {}

  void execute(Stage s) {
    switch (s) {
      case Stage::Ingest: return ingest();
      case Stage::Prep: return prep();
      case Stage::Label: return label();
      case Stage::Split: return split();
      case Stage::Reduce: return reduce();
      case Stage::Cluster: return cluster();
      case Stage::Topics: return topics();
      case Stage::Metrics: return metrics();
      case Stage::Report: return report();
    }
  }

 private:
  fs::path need(const fs::path& rel, Stage producer) const {
    const auto p = dir_ / rel;
    if (!fs::exists(p)) {
      throw Error(Errc::StageDependencyMissing,
                  rel.string() + " is missing; run the " + to_string(producer) + " stage first");
    }
    return p;
  }

  fs::path input_sentences() const {
    return need(cfg_.input == SentenceInput::Refined ? "prep/refined.jsonl" : "prep/sentences.jsonl",
                Stage::Prep);
  }

  vectors::EmbeddingMatrix full_vectors() const {
    if (cfg_.paths.vectors.empty() || !fs::exists(cfg_.paths.vectors)) {
      throw Error(Errc::StageDependencyMissing, "sentence vector file not configured or absent");
    }
    return vectors::read_vectors(cfg_.paths.vectors);
  }

  // Rows of `m` reordered to `keys`; every key must be present.
  static vectors::EmbeddingMatrix align(const vectors::EmbeddingMatrix& m,
                                        const std::vector<std::string>& keys) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < m.rows(); ++r) index.emplace(m.keys[r], r);
    vectors::EmbeddingMatrix out;
    out.dim = m.dim;
    out.keys = keys;
    out.data.reserve(keys.size() * m.dim);
    for (const auto& k : keys) {
      auto it = index.find(k);
      if (it == index.end()) throw Error(Errc::StageDependencyMissing, "no vector for sentence " + k);
      const auto row = m.row(it->second);
      out.data.insert(out.data.end(), row.begin(), row.end());
    }
    return out;
  }

  void ingest() {
    const auto filings = corpus::load_filings(cfg_.paths.manifest);
    corpus::FunnelReport funnel;
    funnel.input = filings.size();
    auto ex = corpus::extract_all(filings);
    funnel.add(ex.stage);
    auto mw = corpus::filter_min_words(std::move(ex.kept), cfg_.min_words);
    funnel.add(mw.stage);
    auto z = corpus::filter_zscore(std::move(mw.kept), cfg_.zscore);
    funnel.add(z.stage);
    auto yr = corpus::filter_year(std::move(z.kept), cfg_.first_year, cfg_.last_year);
    funnel.add(yr.stage);
    corpus::write_documents(yr.kept, dir_ / "ingest/documents.jsonl");
    corpus::write_funnel(funnel, dir_ / "ingest/funnel.json");
  }

  std::vector<textprep::TokenDoc> tokenize(const std::vector<std::pair<std::string, std::string>>& texts) const {
    std::vector<textprep::TokenDoc> docs;
    docs.reserve(texts.size());
    for (const auto& [key, text] : texts) {
      docs.push_back(textprep::normalize_tokens(text, res_.stopwords, res_.lemmas, res_.keywords, key));
    }
    return textprep::detect_phrases(docs, cfg_.phrase_min_count, cfg_.phrase_threshold);
  }

  void prep() {
    const auto docs = corpus::read_documents(need("ingest/documents.jsonl", Stage::Ingest));
    auto funnel = corpus::read_funnel(need("ingest/funnel.json", Stage::Ingest));

    std::vector<std::pair<std::string, std::string>> texts;
    for (const auto& d : docs) {
      std::string cleaned;
      for (const auto& s : textprep::segment_sentences(d)) {
        cleaned += textprep::clean_sentence(s.raw);
        cleaned += '\n';
      }
      texts.emplace_back(d.id, std::move(cleaned));
    }
    auto tokens = tokenize(texts);
    auto extremes = textprep::filter_token_extremes(tokens, cfg_.doc_min_df, cfg_.doc_max_df,
                                                    cfg_.tfidf_floor, res_.keywords);
    auto cos = textprep::cosine_document_filter(extremes.docs, cfg_.cosine_floor);
    funnel.add(cos.stage);

    std::set<std::string> kept_ids;
    for (const auto& t : cos.kept) kept_ids.insert(t.key);
    std::vector<corpus::Document> retained;
    for (const auto& d : docs) {
      if (kept_ids.count(d.id) != 0) retained.push_back(d);
    }

    nlohmann::json vocab = nlohmann::json::object();
    for (const auto& [w, e] : extremes.vocab) {
      vocab[w] = {{"df", e.df}, {"cf", e.cf}, {"tfidf_norm", e.tfidf_norm}};
    }
    textprep::write_token_docs(cos.kept, dir_ / "prep/doc_tokens.jsonl");
    io::write_json(dir_ / "prep/vocabulary.json", vocab);
    corpus::write_documents(retained, dir_ / "prep/documents.jsonl");
    corpus::write_funnel(funnel, dir_ / "prep/funnel.json");

    std::vector<textprep::Sentence> sentences;
    for (const auto& d : retained) {
      auto segs = textprep::segment_sentences(d);
      sentences.insert(sentences.end(), std::make_move_iterator(segs.begin()),
                       std::make_move_iterator(segs.end()));
    }
    sentences = textprep::filter_sentence_length(std::move(sentences), cfg_.sentence_min_words,
                                                 cfg_.sentence_max_words);
    const auto refined = textprep::refine_sentences_by_keyword(sentences, res_.keywords);
    textprep::write_sentences(sentences, dir_ / "prep/sentences.jsonl");
    textprep::write_sentences(refined, dir_ / "prep/refined.jsonl");

    const auto& chosen = cfg_.input == SentenceInput::Refined ? refined : sentences;
    std::vector<std::pair<std::string, std::string>> sent_texts;
    sent_texts.reserve(chosen.size());
    for (const auto& s : chosen) sent_texts.emplace_back(s.key(), s.cleaned);
    textprep::write_token_docs(tokenize(sent_texts), dir_ / "prep/sentence_tokens.jsonl");
  }

  void label() {
    const auto sentences = textprep::read_sentences(need("prep/sentences.jsonl", Stage::Prep));
    const std::set<std::string> relaxed(cfg_.relaxed_topics.begin(), cfg_.relaxed_topics.end());
    const auto rows = labeler::build_labeled_dataset(sentences, res_.keywords, relaxed);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& t : res_.keywords.topics()) counts[t.name] = 0;
    for (const auto& r : rows) counts[r.label] = counts[r.label].get<std::size_t>() + 1;
    labeler::write_labeled(rows, dir_ / "label/labeled.jsonl");
    io::write_json(dir_ / "label/counts.json", counts);
  }

  void split() {
    const auto rows = labeler::read_labeled(need("label/labeled.jsonl", Stage::Label));
    labeler::write_split(labeler::split_topicwise(rows, cfg_.train_fraction, cfg_.rng_seed), dir_ / "split");
  }

  void reduce() {
    const auto sentences = textprep::read_sentences(input_sentences());
    std::vector<std::string> keys;
    keys.reserve(sentences.size());
    for (const auto& s : sentences) keys.push_back(s.key());

    vectors::EmbeddingMatrix reduced;
    if (!cfg_.paths.reduced_vectors.empty()) {
      reduced = align(reduce::accept_external_reduction(cfg_.paths.reduced_vectors, cfg_.n_components), keys);
    } else {
      reduced = reduce::reduce(align(full_vectors(), keys), cfg_.n_components);
    }
    vectors::write_vectors(reduced, dir_ / "reduce/reduced.ftsvec");
  }

  void cluster() {
    const auto reduced = vectors::read_vectors(need("reduce/reduced.ftsvec", Stage::Reduce));
    const auto a = cluster::density_cluster(reduced, {cfg_.min_cluster_size, cfg_.min_samples});
    cluster::write_assignments(a, reduced.keys, dir_ / "cluster/assignments.jsonl");
    std::map<std::string, std::size_t> sizes;
    for (int l : a.labels) ++sizes[std::to_string(l)];
    io::write_json(dir_ / "cluster/summary.json",
                   {{"points", a.labels.size()}, {"clusters", a.n_clusters},
                    {"outliers", cluster::count_outliers(a)}, {"sizes", sizes}});
  }

  // Token docs aligned with the cluster assignment order.
  std::pair<std::vector<textprep::TokenDoc>, std::vector<int>> clustered_tokens() const {
    const auto assignments = cluster::read_assignments(need("cluster/assignments.jsonl", Stage::Cluster));
    const auto tokens = textprep::read_token_docs(need("prep/sentence_tokens.jsonl", Stage::Prep));
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tokens.size(); ++i) index.emplace(tokens[i].key, i);
    std::vector<textprep::TokenDoc> docs;
    std::vector<int> labels;
    for (const auto& [key, l] : assignments) {
      auto it = index.find(key);
      if (it == index.end()) throw Error(Errc::StageDependencyMissing, "no tokens for sentence " + key);
      docs.push_back(tokens[it->second]);
      labels.push_back(l);
    }
    return {std::move(docs), std::move(labels)};
  }

  double nmf_scorer(const topics::TopicRepresentation& t, const std::vector<textprep::TokenDoc>& corpus) const {
    metrics::CoherenceConfig cc;
    cc.window_size = cfg_.nmf_window;
    cc.top_k = cfg_.top_k;
    return metrics::npmi_coherence(topics::word_lists(t), corpus, cc).mean;
  }

  void topics() {
    const auto [docs, labels] = clustered_tokens();
    const auto counts = topics::build_class_counts(docs, labels, res_.stopwords, {cfg_.vectorizer_min_df});
    const auto weights =
        topics::ctfidf(counts, &res_.keywords, {cfg_.seed_multiplier, cfg_.reduce_frequent});
    topics::write_topics(topics::top_k_words(weights, cfg_.top_k), dir_ / "topics/topics.json");

    if (!cfg_.nmf_enabled) return;
    const auto [A, vocab] = topics::doc_term_matrix(docs, cfg_.nmf_min_df);
    topics::NmfOptions opts;
    opts.max_iters = cfg_.nmf_max_iters;
    opts.tol = cfg_.nmf_tol;
    opts.seed = cfg_.rng_seed;
    const auto grid = topics::grid_search_k(
        A, vocab, cfg_.nmf_candidate_ks,
        [&](const topics::TopicRepresentation& t) { return nmf_scorer(t, docs); }, opts, cfg_.top_k);
    topics::write_topics(topics::nmf_topics(grid.best, vocab, cfg_.top_k), dir_ / "topics/nmf_topics.json");

    // Document-to-topic assignment: argmax of each W row, noise when empty.
    std::vector<nlohmann::json> rows;
    for (Eigen::Index r = 0; r < grid.best.W.rows(); ++r) {
      Eigen::Index best = 0;
      const double m = grid.best.W.row(r).maxCoeff(&best);
      rows.push_back({{"key", docs[static_cast<std::size_t>(r)].key},
                      {"label", m > 0.0 ? static_cast<int>(best) : cluster::kNoise}});
    }
    io::write_jsonl(dir_ / "topics/nmf_assignments.jsonl", rows);
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& [k, s] : grid.scores) scores.push_back({{"k", k}, {"npmi", s}});
    io::write_json(dir_ / "topics/nmf_grid.json",
                   {{"best_k", grid.best_k}, {"scores", scores},
                    {"relative_residual", topics::relative_residual(A, grid.best)},
                    {"iterations", grid.best.residuals.size() - 1}});
  }

  metrics::MetricsReport evaluate(const std::string& model, const topics::TopicRepresentation& reps,
                                  const std::vector<textprep::TokenDoc>& corpus, std::size_t window,
                                  const vectors::EmbeddingMatrix& emb, const std::vector<int>& labels) const {
    metrics::MetricsReport m;
    m.model = model;
    m.input = fts::to_string(cfg_.input);
    m.outlier_count = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), cluster::kNoise));
    const auto words = topics::word_lists(reps);
    if (!words.empty()) {
      metrics::CoherenceConfig cc;
      cc.window_size = window;
      cc.top_k = cfg_.top_k;
      const auto coh = metrics::npmi_coherence(words, corpus, cc);
      m.npmi_raw = coh.mean;
      m.npmi_per_topic = coh.per_topic;
      const auto prec = metrics::topic_precision(words, res_.keywords);
      m.topic_precision = prec.model;
      m.precision_per_domain = prec.per_domain;
    }
    if (std::any_of(labels.begin(), labels.end(), [](int l) { return l != cluster::kNoise; })) {
      const auto intra = metrics::intratopic_similarity(emb, labels);
      m.intratopic_raw = intra.model;
      m.intratopic_per_topic = intra.per_topic;
      try {
        m.intertopic_raw = metrics::intertopic_similarity(emb, labels);
      } catch (const Error& e) {
        if (e.code() != Errc::TooFewTopics) throw;
      }
    }
    return m;
  }

  void metrics() {
    const auto [docs, labels] = clustered_tokens();
    const auto reps = topics::read_topics(need("topics/topics.json", Stage::Topics));
    std::vector<std::string> keys;
    for (const auto& d : docs) keys.push_back(d.key);
    const auto full = full_vectors();
    const auto emb = align(full, keys);

    nlohmann::json models = nlohmann::json::array();
    models.push_back(report::to_json(evaluate("density-ctfidf", reps, docs, cfg_.window, emb, labels)));

    if (cfg_.nmf_enabled) {
      const auto nmf_reps = topics::read_topics(need("topics/nmf_topics.json", Stage::Topics));
      std::unordered_map<std::string, int> nmf_label;
      for (const auto& row : io::read_jsonl(need("topics/nmf_assignments.jsonl", Stage::Topics))) {
        nmf_label[row.at("key").get<std::string>()] = row.at("label").get<int>();
      }
      std::vector<int> nl;
      for (const auto& k : keys) nl.push_back(nmf_label.at(k));
      models.push_back(report::to_json(evaluate("nmf", nmf_reps, docs, cfg_.nmf_window, emb, nl)));
    }
    io::write_json(dir_ / "metrics/metrics.json", {{"models", models}});

    // Embedding organisation on the held-out labeled sentences.
    const auto test_path = dir_ / "split/test.jsonl";
    if (fs::exists(test_path)) {
      const auto test = labeler::read_labeled(test_path);
      std::vector<std::string> tkeys;
      std::vector<int> tlabels;
      for (const auto& r : test) {
        tkeys.push_back(r.key);
        tlabels.push_back(static_cast<int>(*res_.keywords.index_of(r.label)));
      }
      const auto temb = align(full, tkeys);
      const auto intra = metrics::intratopic_similarity(temb, tlabels);
      nlohmann::json inter = nullptr;
      try {
        inter = metrics::intertopic_similarity(temb, tlabels);
      } catch (const Error& e) {
        if (e.code() != Errc::TooFewTopics) throw;
      }
      nlohmann::json per = nlohmann::json::object();
      for (const auto& [t, v] : intra.per_topic) per[res_.keywords.name(static_cast<std::size_t>(t))] = v;
      io::write_json(dir_ / "metrics/test_similarity.json",
                     {{"sentences", test.size()}, {"intratopic", intra.model}, {"intertopic", inter},
                      {"intratopic_per_domain", per}});
    }
  }

  void report() {
    const auto j = io::read_json(need("metrics/metrics.json", Stage::Metrics));
    std::vector<metrics::MetricsReport> rows;
    for (const auto& m : j.at("models")) rows.push_back(report::metrics_from_json(m));
    const auto reps = topics::read_topics(need("topics/topics.json", Stage::Topics));
    const auto funnel = corpus::read_funnel(need("prep/funnel.json", Stage::Prep));
    report::emit_report(rows, reps, funnel, res_.keywords, dir_ / "report");
  }

  const PipelineConfig& cfg_;
  fs::path dir_;
  Resources res_;
};

}  // namespace

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> stages = [] {
    std::vector<Stage> v;
    for (const auto& [s, n] : stage_names()) v.push_back(s);
    return v;
  }();
  return stages;
}

std::string to_string(Stage s) {
  for (const auto& [st, n] : stage_names()) {
    if (st == s) return n;
  }
  return "unknown";
}

Stage parse_stage(std::string_view name) {
  for (const auto& [st, n] : stage_names()) {
    if (name == n) return st;
  }
  throw Error(Errc::ConfigInvalid, "unknown stage: " + std::string(name));
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::IoError, "sha256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

std::string sha256_file(const fs::path& path) { return sha256_hex(io::read_text(path)); }

void write_manifest(const RunManifest& m, const fs::path& path) {
  nlohmann::json timings = nlohmann::json::array();
  for (const auto& t : m.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  io::write_json(path, {{"config_sha256", m.config_sha256}, {"timings", timings}, {"artifacts", m.artifacts}});
}

RunManifest run_pipeline(const PipelineConfig& cfg, const fs::path& run_dir, const std::set<Stage>& stages) {
  cfg.validate();
  fs::create_directories(run_dir);
  const std::string config_text = cfg.to_json().dump(2) + "\n";
  io::write_text(run_dir / "config.json", config_text);

  RunManifest manifest;
  manifest.config_sha256 = sha256_hex(config_text);
  Run run(cfg, run_dir);
  for (Stage s : all_stages()) {
    if (stages.count(s) == 0) continue;
    const auto t0 = std::chrono::steady_clock::now();
    run.execute(s);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    manifest.timings.push_back({to_string(s), dt.count()});
  }

  for (const auto& entry : fs::recursive_directory_iterator(run_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), run_dir).generic_string();
    if (rel == "manifest.json") continue;
    manifest.artifacts[rel] = sha256_file(entry.path());
  }
  write_manifest(manifest, run_dir / "manifest.json");
  return manifest;
}

}  // namespace fts::pipeline
