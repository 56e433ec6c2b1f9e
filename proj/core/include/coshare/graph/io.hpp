#pragma once

#include <filesystem>
#include <vector>

#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/groups.hpp"
#include "coshare/graph/null_model.hpp"
#include "coshare/graph/thresholds.hpp"

namespace coshare::graph {

struct ScoredGraph {
  CoShareGraph graph;
  std::vector<EdgeScore> scores;
};

/// edges.tsv: fake_url, reliable_url, weight, significance, score (with header).
void write_edges_tsv(const std::filesystem::path& path, const CoShareGraph& graph,
                     const std::vector<EdgeScore>& scores);
ScoredGraph read_edges_tsv(const std::filesystem::path& path);

/// thresholds.json: {"thresholds": [{quantile, point, ci_low, ci_high, n_samples, sample_dim, seed}]}
void write_thresholds_json(const std::filesystem::path& path,
                           const std::vector<ThresholdEstimate>& thresholds);
std::vector<ThresholdEstimate> read_thresholds_json(const std::filesystem::path& path);

/// groups.tsv: url, domain, group, max_score, agg_score (with header).
void write_groups_tsv(const std::filesystem::path& path, const std::vector<GroupAssignment>& groups);
std::vector<GroupAssignment> read_groups_tsv(const std::filesystem::path& path);

}  // namespace coshare::graph
