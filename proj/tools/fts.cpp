// Command-line front end for the topic-modeling pipeline.
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fts/circle_loss.hpp"
#include "fts/config.hpp"
#include "fts/error.hpp"
#include "fts/pipeline.hpp"
#include "fts/vectors.hpp"

namespace {

// Flags that override config-file values.
struct Overrides {
  std::string config;
  std::string run_dir;
  std::optional<std::size_t> min_words, min_cluster_size, min_samples, n_components, top_k, window;
  std::optional<double> zscore, cosine_floor, seed_multiplier, train_fraction;
  std::optional<int> first_year, last_year;
  std::optional<std::string> input, vectors, reduced_vectors;
  std::optional<std::uint64_t> seed;
};

void add_pipeline_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--run-dir", o.run_dir, "Run directory")->required();
  cmd->add_option("--min-words", o.min_words);
  cmd->add_option("--zscore", o.zscore);
  cmd->add_option("--first-year", o.first_year);
  cmd->add_option("--last-year", o.last_year);
  cmd->add_option("--cosine-floor", o.cosine_floor);
  cmd->add_option("--input", o.input, "sentences | refined");
  cmd->add_option("--train-fraction", o.train_fraction);
  cmd->add_option("--n-components", o.n_components);
  cmd->add_option("--min-cluster-size", o.min_cluster_size);
  cmd->add_option("--min-samples", o.min_samples);
  cmd->add_option("--seed-multiplier", o.seed_multiplier);
  cmd->add_option("--top-k", o.top_k);
  cmd->add_option("--window", o.window);
  cmd->add_option("--vectors", o.vectors, "FTSVEC01 sentence vectors");
  cmd->add_option("--reduced-vectors", o.reduced_vectors, "Pre-reduced FTSVEC01 vectors");
  cmd->add_option("--seed", o.seed, "RNG seed");
}

fts::PipelineConfig resolve_config(const Overrides& o) {
  auto cfg = fts::PipelineConfig::load(o.config);
  if (o.min_words) cfg.min_words = *o.min_words;
  if (o.zscore) cfg.zscore = *o.zscore;
  if (o.first_year) cfg.first_year = *o.first_year;
  if (o.last_year) cfg.last_year = *o.last_year;
  if (o.cosine_floor) cfg.cosine_floor = *o.cosine_floor;
  if (o.input) {
    if (*o.input != "sentences" && *o.input != "refined") {
      throw fts::Error(fts::Errc::ConfigInvalid, "--input must be sentences or refined");
    }
    cfg.input = *o.input == "refined" ? fts::SentenceInput::Refined : fts::SentenceInput::Sentences;
  }
  if (o.train_fraction) cfg.train_fraction = *o.train_fraction;
  if (o.n_components) cfg.n_components = *o.n_components;
  if (o.min_cluster_size) cfg.min_cluster_size = *o.min_cluster_size;
  if (o.min_samples) cfg.min_samples = *o.min_samples;
  if (o.seed_multiplier) cfg.seed_multiplier = *o.seed_multiplier;
  if (o.top_k) cfg.top_k = *o.top_k;
  if (o.window) cfg.window = *o.window;
  if (o.vectors) cfg.paths.vectors = *o.vectors;
  if (o.reduced_vectors) cfg.paths.reduced_vectors = *o.reduced_vectors;
  if (o.seed) cfg.rng_seed = *o.seed;
  return cfg;
}

void print_manifest(const fts::pipeline::RunManifest& m) {
  for (const auto& t : m.timings) std::printf("%-8s %8.3f s\n", t.stage.c_str(), t.seconds);
  std::printf("%zu artifacts, config %s\n", m.artifacts.size(), m.config_sha256.substr(0, 12).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Financial text topic modeling toolkit"};
  app.require_subcommand(1);

  Overrides o;
  std::vector<std::pair<CLI::App*, std::set<fts::pipeline::Stage>>> stage_cmds;
  for (auto s : fts::pipeline::all_stages()) {
    auto* cmd = app.add_subcommand(fts::pipeline::to_string(s), "Run the " + fts::pipeline::to_string(s) + " stage");
    add_pipeline_flags(cmd, o);
    stage_cmds.push_back({cmd, {s}});
  }
  auto* run = app.add_subcommand("run", "Run all stages");
  add_pipeline_flags(run, o);
  std::vector<std::string> only;
  run->add_option("--stages", only, "Restrict to these stages");
  stage_cmds.push_back({run, {}});

  auto* vec = app.add_subcommand("vectors", "Vector file utilities");
  vec->require_subcommand(1);
  auto* inspect = vec->add_subcommand("inspect", "Print the header and row norms of a vector file");
  std::string vec_path;
  std::size_t show = 5;
  inspect->add_option("path", vec_path)->required()->check(CLI::ExistingFile);
  inspect->add_option("--rows", show, "Rows to list");

  auto* loss = app.add_subcommand("loss", "Evaluate the circle loss on given similarities");
  std::vector<double> sp, sn;
  double scale = 5.0, margin = 0.25;
  loss->add_option("--pos", sp, "Positive-pair similarities")->delimiter(',');
  loss->add_option("--neg", sn, "Negative-pair similarities")->delimiter(',');
  loss->add_option("--scale", scale);
  loss->add_option("--margin", margin);

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [cmd, stages] : stage_cmds) {
      if (!cmd->parsed()) continue;
      auto selected = stages;
      if (cmd == run) {
        for (const auto& s : only) selected.insert(fts::pipeline::parse_stage(s));
        if (selected.empty()) selected.insert(fts::pipeline::all_stages().begin(), fts::pipeline::all_stages().end());
      }
      print_manifest(fts::pipeline::run_pipeline(resolve_config(o), o.run_dir, selected));
      return 0;
    }
    if (inspect->parsed()) {
      const auto m = fts::vectors::read_vectors(vec_path);
      std::printf("FTSVEC01 rows=%zu dim=%u\n", m.rows(), m.dim);
      for (std::size_t r = 0; r < m.rows() && r < show; ++r) {
        double n2 = 0.0;
        for (float v : m.row(r)) n2 += static_cast<double>(v) * v;
        std::printf("%s\t|v|=%.6f\n", m.keys[r].c_str(), std::sqrt(n2));
      }
      return 0;
    }
    if (loss->parsed()) {
      const fts::objective::SimilarityBatch batch{sp, sn};
      std::printf("%.12f\n", fts::objective::circle_loss(batch, {scale, margin}));
      return 0;
    }
  } catch (const fts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
