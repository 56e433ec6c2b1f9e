#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coshare/graph/coshare_graph.hpp"

namespace coshare::graph {

/// Log of the Binomial(n, p) probability mass at k, using Loader's
/// saddle-point expansion (accurate to a few ulp in log space).
double log_binomial_pmf(std::uint64_t n, double p, std::uint64_t k);

/// log P(X >= k) for X ~ Binomial(n, p).
double log_binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k);

/// Above this many trials the tail is taken from the regularized incomplete
/// beta function instead of direct summation.
inline constexpr std::uint64_t kIncompleteBetaTrials = 1'000'000;

/// p_ij = k_i * k_j / (2 T^2), clamped below 1.
double edge_probability(std::uint64_t k_fake, std::uint64_t k_reliable, std::uint64_t total);

struct EdgeScore {
  std::uint32_t edge = 0;  // index into CoShareGraph::edges()
  double significance = 1.0;  // P(X >= w), floored at the smallest subnormal
  double score = 0.0;  // -ln P(X >= w), computed in log space
};

struct ScoreOptions {
  unsigned threads = 1;
};

/// Scores every edge against the configuration-model null. Output order
/// follows the graph's edge order.
std::vector<EdgeScore> score_edges(const CoShareGraph& graph, const ScoreOptions& options = {});

}  // namespace coshare::graph
