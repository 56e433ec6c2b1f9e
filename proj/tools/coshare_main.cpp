// coshare: command-line front end for the co-share narrative pipeline.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/common/log.hpp"
#include "coshare/library/library.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/pipeline/config.hpp"
#include "coshare/pipeline/run.hpp"
#include "coshare/pipeline/synthetic.hpp"

namespace fs = std::filesystem;
using namespace coshare;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInsufficient = 4;

std::string flag_name(const std::string& key) {
  std::string out = key;
  for (auto& c : out)
    if (c == '_') c = '-';
  return "--" + out;
}

bool is_path_key(const std::string& key) {
  return key == "shares" || key == "articles" || key == "claims" || key == "catalog" || key == "out_dir";
}

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

pipeline::PipelineConfig resolve_config(const Overrides& o) {
  auto cfg = o.config_path.empty() ? pipeline::PipelineConfig{} : pipeline::load_config(o.config_path);
  for (const auto& [key, value] : o.values) {
    if (value.empty()) continue;
    pipeline::set_config_value(cfg, key, is_path_key(key) ? fs::absolute(value).string() : value);
  }
  for (const auto& [key, set] : o.flags)
    if (set) pipeline::set_config_value(cfg, key, "true");
  return cfg;
}

library::EvidenceIndex read_evidence(const fs::path& path, narrative::Dimensionality dim) {
  library::EvidenceIndex out;
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  const auto want = narrative::to_string(dim);
  while (std::getline(in, line)) {
    const auto f = split(line, '\t');
    if (f.size() != 4) throw DataError(path.string() + ": malformed evidence row");
    if (f[0] == want) out[std::string(f[1])].emplace_back(f[3]);
  }
  return out;
}

void print_run(const pipeline::PipelineRun& run) {
  for (const auto& s : run.stages) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", s.seconds);
    std::cout << pipeline::to_string(s.stage) << '\t' << (s.cached ? "cached" : "ran") << '\t' << secs << '\n';
  }
  std::cout << "out_dir\t" << run.out_dir.string() << '\n';
  if (!run.manifest.empty()) std::cout << "manifest\t" << run.manifest.string() << '\n';
  if (!run.bundle_hash.empty()) std::cout << "bundle_hash\t" << run.bundle_hash << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-share graph and narrative pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  bool verbose = false;
  app.add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", verbose, "log stage progress");
  for (const auto& key : pipeline::config_keys()) {
    if (key.is_flag)
      app.add_flag(flag_name(key.name), o.flags[key.name], key.help);
    else
      app.add_option(flag_name(key.name), o.values[key.name], key.help);
  }

  bool force = false;
  std::map<std::string, CLI::App*> stage_cmds;
  for (auto stage : pipeline::all_stages()) {
    const std::string name(pipeline::to_string(stage));
    auto* sub = app.add_subcommand(name, "run the pipeline through the " + name + " stage");
    sub->add_flag("--force", force, "recompute stages even when cached");
    stage_cmds[name] = sub;
  }
  auto* run_cmd = app.add_subcommand("run", "run every stage");
  run_cmd->add_flag("--force", force, "recompute stages even when cached");

  pipeline::SyntheticSpec spec;
  std::string synth_dir;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus and a config for it");
  synth->add_option("--dir", synth_dir, "output directory")->required();
  synth->add_option("--users", spec.n_users, "number of users")->capture_default_str();
  synth->add_option("--fake-urls", spec.n_fake_urls, "fake news URLs")->capture_default_str();
  synth->add_option("--reliable-urls", spec.n_reliable_urls, "reliable news URLs")->capture_default_str();
  synth->add_option("--clique", spec.clique_size, "users in the co-sharing clique")->capture_default_str();
  synth->add_option("--overlap-coshared", spec.planted_overlap_coshared, "planted label rate, co-shared articles")
      ->capture_default_str();
  synth->add_option("--overlap-control", spec.planted_overlap_control, "planted label rate, control articles")
      ->capture_default_str();
  synth->add_option("--vocab", spec.vocab_size, "background nouns")->capture_default_str();
  synth->add_option("--coshared-articles", spec.n_coshared_articles, "designated co-shared articles")
      ->capture_default_str();
  synth->add_option("--control-articles", spec.n_control_articles, "designated control articles")
      ->capture_default_str();

  std::vector<std::string> include;
  std::vector<std::string> exclude;
  std::string lib_name = "all_fake";
  std::string dim_name = "high";
  std::size_t max_examples = 3;
  auto* search = app.add_subcommand("search", "keyword search over a built library");
  search->add_option("--include", include, "terms every label must contain")->required();
  search->add_option("--exclude", exclude, "terms no label may contain");
  search->add_option("--library", lib_name, "all_fake, recurring_fake or false_claims")->capture_default_str();
  search->add_option("--dim", dim_name, "low or high")->capture_default_str();
  search->add_option("--max-examples", max_examples, "source sentences per label")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }
  if (verbose) logger().set_level(spdlog::level::info);

  try {
    if (synth->parsed()) {
      const auto out = pipeline::generate_synthetic(spec, resolve_config(o).seed, synth_dir);
      std::cout << "config\t" << out.config.string() << '\n' << "truth\t" << out.truth.string() << '\n';
      return 0;
    }

    const auto cfg = resolve_config(o);
    if (search->parsed()) {
      const auto name = library::parse_library_name(lib_name);
      if (!name) throw ConfigError("unknown library '" + lib_name + "'");
      const auto dim = narrative::parse_dimensionality(dim_name);
      const auto libs = library::read_libraries_tsv(cfg.out_dir / "library.tsv");
      const auto evidence = read_evidence(cfg.out_dir / "evidence.tsv", dim);
      for (const auto& lib : libs) {
        if (lib.name != *name || lib.dimensionality != dim) continue;
        const auto hits = library::search_narratives(lib, include, exclude, evidence, max_examples);
        std::cout << "label\tfrequency\texample\n";
        for (const auto& h : hits) {
          std::cout << tsv_field(h.label) << '\t' << h.frequency << '\t'
                    << (h.examples.empty() ? std::string() : tsv_field(h.examples.front())) << '\n';
          for (std::size_t i = 1; i < h.examples.size(); ++i) std::cout << "\t\t" << tsv_field(h.examples[i]) << '\n';
        }
        return 0;
      }
      throw DataError("library " + lib_name + ":" + dim_name + " not found");
    }

    auto until = pipeline::Stage::report;
    for (const auto& [name, sub] : stage_cmds)
      if (sub->parsed()) until = *pipeline::parse_stage(name);
    print_run(pipeline::run_pipeline(cfg, until, {force}));
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::config:
        return kExitConfig;
      case ErrorKind::data:
        return kExitData;
      case ErrorKind::insufficient_data:
        return kExitInsufficient;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitData;
}
