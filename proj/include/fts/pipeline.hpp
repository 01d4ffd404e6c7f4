#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fts/config.hpp"

namespace fts::pipeline {

// Canonical execution order.
enum class Stage { Ingest, Prep, Label, Split, Reduce, Cluster, Topics, Metrics, Report };

const std::vector<Stage>& all_stages();
std::string to_string(Stage s);
Stage parse_stage(std::string_view name);  // ConfigInvalid on unknown names

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunManifest {
  std::string config_sha256;
  std::vector<StageTiming> timings;
  std::map<std::string, std::string> artifacts;  // run-relative path -> sha256
};

// Runs the requested stages in canonical order inside `run_dir`, one
// subdirectory per stage plus config.json and manifest.json at the top.
// Missing upstream artifacts raise StageDependencyMissing.
RunManifest run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& run_dir,
                         const std::set<Stage>& stages);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

void write_manifest(const RunManifest& m, const std::filesystem::path& path);

}  // namespace fts::pipeline
