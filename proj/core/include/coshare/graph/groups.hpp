#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/records.hpp"
#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/null_model.hpp"
#include "coshare/graph/thresholds.hpp"

namespace coshare::graph {

enum class Group { coshared, control, neither };
std::string_view to_string(Group g);
std::optional<Group> parse_group(std::string_view text);

enum class Aggregation { sum, max };
std::string_view to_string(Aggregation a);
std::optional<Aggregation> parse_aggregation(std::string_view text);

struct GroupAssignment {
  std::string url;
  std::string domain;
  Group group = Group::neither;
  double max_score = 0.0;  // 0 when the URL has no edges
  double agg_score = 0.0;  // sum of incident edge scores
};

struct GroupRule {
  double coshared_q = 0.99;
  double control_q = 0.95;
};

/// Assigns each mainstream reliable URL among `candidate_urls`:
/// coshared iff some incident edge scores >= threshold(coshared_q),
/// control iff every incident edge (possibly none) scores < threshold(control_q),
/// neither otherwise. Output is sorted by URL.
std::vector<GroupAssignment> assign_groups(const CoShareGraph& graph,
                                           std::span<const EdgeScore> scores,
                                           std::span<const ThresholdEstimate> thresholds,
                                           const corpus::DomainCatalog& catalog,
                                           std::span<const std::string> candidate_urls,
                                           const GroupRule& rule = {});

struct RankedArticle {
  std::string url;
  double agg_score = 0.0;
  double max_score = 0.0;
  std::size_t rank = 0;  // 1-based
};

/// Reliable URLs of `domain` in the graph, ordered by aggregated incident
/// score (descending, URL ascending on ties). k = 0 returns all.
std::vector<RankedArticle> rank_articles_by_coshare(const CoShareGraph& graph,
                                                    std::span<const EdgeScore> scores,
                                                    std::string_view domain, std::size_t k,
                                                    Aggregation aggregation = Aggregation::sum);

struct SharerSummary {
  std::size_t n_articles = 0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // sample standard deviation
  std::optional<double> mean_followers;  // over distinct sharers, if supplied
};

struct GroupSharerStats {
  SharerSummary coshared;
  SharerSummary control;
  SharerSummary fake;
};

/// Distinct-sharer statistics for the coshared, control and fake article sets.
GroupSharerStats group_descriptive_stats(const std::vector<corpus::ShareRecord>& records,
                                         std::span<const GroupAssignment> groups,
                                         std::span<const std::string> fake_urls);

SharerSummary summarize_counts(std::vector<double> counts);

}  // namespace coshare::graph
