#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/pipeline/config.hpp"

namespace coshare::pipeline {

enum class Stage { ingest, graph, thresholds, groups, extract, libraries, test, report };

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view text);
const std::vector<Stage>& all_stages();

/// Files a stage writes, relative to the output directory.
const std::vector<std::string>& stage_output_names(Stage stage);

struct StageRecord {
  Stage stage = Stage::ingest;
  std::string key;  // hex digest the cached outputs are stamped with
  bool cached = false;
  double seconds = 0.0;
  std::vector<std::filesystem::path> outputs;
};

struct PipelineRun {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  std::vector<StageRecord> stages;
  std::filesystem::path manifest;  // empty unless the report stage ran
  /// Digest over every output file except the manifest.
  std::string bundle_hash;
};

struct RunOptions {
  /// Recompute stages even when their stamps match.
  bool force = false;
};

/// Runs every stage up to and including `until`, serving stages whose
/// stamp matches from the files already in out_dir. Errors carry the
/// failing stage's name and keep the original error kind.
PipelineRun run_pipeline(const PipelineConfig& cfg, Stage until = Stage::report, const RunOptions& options = {});

/// load_config then run_pipeline.
PipelineRun run_pipeline(const std::filesystem::path& config_path, Stage until = Stage::report,
                         const RunOptions& options = {});

/// Digest of the resolved config, excluding keys that cannot change outputs.
std::string config_hash(const PipelineConfig& cfg);

/// Digest of the named files under out_dir, in the given order.
std::string bundle_digest(const std::filesystem::path& out_dir, const std::vector<std::string>& names);

/// Names of every output except the manifest, in stage order.
std::vector<std::string> bundle_file_names();

}  // namespace coshare::pipeline
