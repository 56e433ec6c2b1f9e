#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/config.hpp"
#include "coshare/graph/groups.hpp"
#include "coshare/library/library.hpp"
#include "coshare/stats/tests.hpp"

namespace coshare::pipeline {

/// Everything a run depends on. Input paths are absolute once loaded.
struct PipelineConfig {
  std::filesystem::path shares;
  std::filesystem::path articles;
  std::filesystem::path claims;
  std::filesystem::path catalog;
  std::filesystem::path out_dir = "coshare_out";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool strict = false;

  corpus::CorpusConfig corpus;
  corpus::MainstreamCriteria mainstream;

  std::size_t n_samples = 1000;
  std::size_t sample_dim = 1000;
  std::vector<double> quantiles;  // empty = defaults
  double coshared_q = 0.99;
  double control_q = 0.95;
  graph::Aggregation aggregation = graph::Aggregation::sum;
  std::size_t top_k = 10;

  int k_low = 100;
  int k_high = 1000;
  int embedding_dim = 100;
  int window = 5;
  int power_iterations = 4;
  std::size_t max_evidence = 3;

  double recurring_top = 0.01;
  library::RecurringMode recurring_mode = library::RecurringMode::tie_inclusive;

  std::vector<std::string> outlet_classes{"all_reliable", "trustworthy", "liberal"};
  stats::Alternative alternative = stats::Alternative::greater;
  stats::ZeroPolicy zero_policy = stats::ZeroPolicy::discard;
  bool sample_sd = false;

  /// Threshold quantiles actually used.
  [[nodiscard]] std::vector<double> effective_quantiles() const;

  /// Value checks that do not touch the filesystem. Throws ConfigError.
  void validate() const;

  /// validate() plus existence of every input file.
  void validate_inputs() const;
};

/// One settable key. Every key can appear in a config file as
/// `key = value` and on the command line as `--key value`.
struct ConfigKey {
  std::string name;
  std::string help;
  bool is_flag = false;
  std::function<void(PipelineConfig&, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

const std::vector<ConfigKey>& config_keys();

/// Sets one key from its text form. Relative paths stay relative; callers
/// resolve them. Throws ConfigError on unknown keys or bad values.
void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const PipelineConfig& cfg, std::string_view key);

/// Reads a flat `key = value` file (# comments, quoted strings, lists as
/// comma-separated strings or [a, b] arrays). Relative input paths and
/// out_dir are resolved against the file's directory.
PipelineConfig load_config(const std::filesystem::path& path);

/// Writes every key in canonical form; load_config reads it back.
void write_config(const std::filesystem::path& path, const PipelineConfig& cfg);

/// Canonical `key = value` lines for the given keys (all keys if empty).
std::string canonical_text(const PipelineConfig& cfg, const std::vector<std::string>& keys = {});

/// Outlet class membership test for a catalog domain. Known classes:
/// all_reliable, trustworthy, liberal, conservative.
bool in_outlet_class(std::string_view outlet_class, const corpus::DomainCatalog& catalog, std::string_view domain);
bool is_known_outlet_class(std::string_view outlet_class);

}  // namespace coshare::pipeline
