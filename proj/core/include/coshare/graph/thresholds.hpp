#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/null_model.hpp"

namespace coshare::graph {

struct ThresholdEstimate {
  double quantile = 0.0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_samples = 0;
  std::size_t sample_dim = 0;
  std::uint64_t seed = 0;
};

struct SamplingOptions {
  std::size_t n_samples = 1000;
  std::size_t sample_dim = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t max_retries = 100;  // per sample, when the induced subgraph has no edges
};

/// {0.999, 0.995, 0.99, 0.98, 0.97, 0.96, 0.95}
std::vector<double> default_quantiles();

/// Linear-interpolation sample quantile (R type 7) of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

/// Node-sampled subgraph quantiles of edge scores. Each sample draws
/// sample_dim fake and sample_dim reliable nodes without replacement and
/// uses the scores of the induced edges. Sample i uses its own stream
/// derived from (seed, i), so results do not depend on the thread count.
std::vector<ThresholdEstimate> estimate_quantile_thresholds(const CoShareGraph& graph,
                                                            std::span<const EdgeScore> scores,
                                                            std::span<const double> quantiles,
                                                            const SamplingOptions& options);

/// Looks up the estimate for quantile q; ConfigError if it was not computed.
const ThresholdEstimate& threshold_for(std::span<const ThresholdEstimate> thresholds, double q);

}  // namespace coshare::graph
