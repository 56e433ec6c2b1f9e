#include "coshare/graph/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/common/parallel.hpp"
#include "coshare/common/rng.hpp"

namespace coshare::graph {

std::vector<double> default_quantiles() { return {0.999, 0.995, 0.99, 0.98, 0.97, 0.96, 0.95}; }

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<ThresholdEstimate> estimate_quantile_thresholds(const CoShareGraph& graph,
                                                            std::span<const EdgeScore> scores,
                                                            std::span<const double> quantiles,
                                                            const SamplingOptions& options) {
  if (options.n_samples < 2) throw ConfigError("n_samples must be at least 2");
  if (options.sample_dim < 1) throw ConfigError("sample_dim must be at least 1");
  for (double q : quantiles)
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("quantile " + format_double(q) + " not in (0, 1)");
  if (graph.empty()) throw DataError("cannot estimate thresholds on an empty co-share graph");
  if (scores.size() != graph.edge_count())
    throw DataError("edge score count does not match the co-share graph");

  const auto n_fake = static_cast<std::uint32_t>(graph.fake_urls().size());
  const auto n_rel = static_cast<std::uint32_t>(graph.reliable_urls().size());
  const auto dim = static_cast<std::uint32_t>(
      std::min<std::size_t>(options.sample_dim, std::numeric_limits<std::uint32_t>::max()));
  std::vector<double> edge_score(graph.edge_count());
  for (const auto& s : scores) edge_score.at(s.edge) = s.score;

  // values[q * n_samples + s]
  std::vector<double> values(quantiles.size() * options.n_samples);
  parallel_for(options.n_samples, options.threads, [&](std::size_t s) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(s)));
    std::vector<char> rel_selected(n_rel, 0);
    std::vector<double> induced;
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > options.max_retries)
        throw DataError("subgraph sample " + std::to_string(s) + " had no edges after " +
                        std::to_string(options.max_retries) + " retries");
      const auto fakes = sample_without_replacement(rng, n_fake, dim);
      const auto rels = sample_without_replacement(rng, n_rel, dim);
      for (auto r : rels) rel_selected[r] = 1;
      induced.clear();
      for (auto f : fakes) {
        for (auto e : graph.edges_of_fake(f)) {
          if (rel_selected[graph.edges()[e].reliable]) induced.push_back(edge_score[e]);
        }
      }
      for (auto r : rels) rel_selected[r] = 0;
      if (!induced.empty()) break;
    }
    std::sort(induced.begin(), induced.end());
    for (std::size_t qi = 0; qi < quantiles.size(); ++qi)
      values[qi * options.n_samples + s] = quantile_sorted(induced, quantiles[qi]);
  });

  std::vector<ThresholdEstimate> out;
  out.reserve(quantiles.size());
  for (std::size_t qi = 0; qi < quantiles.size(); ++qi) {
    std::vector<double> v(values.begin() + static_cast<std::ptrdiff_t>(qi * options.n_samples),
                          values.begin() + static_cast<std::ptrdiff_t>((qi + 1) * options.n_samples));
    double sum = 0.0;
    for (double x : v) sum += x;
    ThresholdEstimate est;
    est.quantile = quantiles[qi];
    est.point = sum / static_cast<double>(v.size());
    std::sort(v.begin(), v.end());
    // A constant sample can put the mean one ulp outside the percentiles.
    est.ci_low = std::min(quantile_sorted(v, 0.025), est.point);
    est.ci_high = std::max(quantile_sorted(v, 0.975), est.point);
    est.n_samples = options.n_samples;
    est.sample_dim = options.sample_dim;
    est.seed = options.seed;
    out.push_back(est);
  }
  return out;
}

const ThresholdEstimate& threshold_for(std::span<const ThresholdEstimate> thresholds, double q) {
  for (const auto& t : thresholds)
    if (std::fabs(t.quantile - q) < 1e-12) return t;
  throw ConfigError("no threshold was estimated for quantile " + format_double(q));
}

}  // namespace coshare::graph
