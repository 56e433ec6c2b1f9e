#include "coshare/graph/groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "coshare/common/error.hpp"
#include "coshare/corpus/url.hpp"

namespace coshare::graph {

std::string_view to_string(Group g) {
  switch (g) {
    case Group::coshared: return "coshared";
    case Group::control: return "control";
    case Group::neither: return "neither";
  }
  return "neither";
}

std::optional<Group> parse_group(std::string_view text) {
  if (text == "coshared") return Group::coshared;
  if (text == "control") return Group::control;
  if (text == "neither") return Group::neither;
  return std::nullopt;
}

std::string_view to_string(Aggregation a) { return a == Aggregation::sum ? "sum" : "max"; }

std::optional<Aggregation> parse_aggregation(std::string_view text) {
  if (text == "sum") return Aggregation::sum;
  if (text == "max") return Aggregation::max;
  return std::nullopt;
}

namespace {

struct Incident {
  double max = 0.0;
  double sum = 0.0;
  bool any = false;
};

Incident incident_scores(const CoShareGraph& graph, const std::vector<double>& edge_score,
                         std::uint32_t node) {
  Incident inc;
  for (auto e : graph.edges_of_reliable(node)) {
    const double s = edge_score[e];
    inc.max = inc.any ? std::max(inc.max, s) : s;
    inc.sum += s;
    inc.any = true;
  }
  return inc;
}

std::vector<double> scores_by_edge(const CoShareGraph& graph, std::span<const EdgeScore> scores) {
  if (scores.size() != graph.edge_count())
    throw DataError("edge score count does not match the co-share graph");
  std::vector<double> out(graph.edge_count());
  for (const auto& s : scores) out.at(s.edge) = s.score;
  return out;
}

}  // namespace

std::vector<GroupAssignment> assign_groups(const CoShareGraph& graph,
                                           std::span<const EdgeScore> scores,
                                           std::span<const ThresholdEstimate> thresholds,
                                           const corpus::DomainCatalog& catalog,
                                           std::span<const std::string> candidate_urls,
                                           const GroupRule& rule) {
  const double thr_co = threshold_for(thresholds, rule.coshared_q).point;
  const double thr_ctl = threshold_for(thresholds, rule.control_q).point;
  const auto edge_score = scores_by_edge(graph, scores);

  std::set<std::string_view> urls(candidate_urls.begin(), candidate_urls.end());
  std::vector<GroupAssignment> out;
  for (auto url : urls) {
    auto cls = catalog.classify_url(url);
    if (cls.kind != corpus::OutletKind::reliable || !cls.mainstream) continue;
    GroupAssignment a;
    a.url = std::string(url);
    a.domain = cls.domain;
    Incident inc;
    if (auto node = graph.find_reliable(url)) inc = incident_scores(graph, edge_score, *node);
    a.max_score = inc.max;
    a.agg_score = inc.sum;
    if (inc.any && inc.max >= thr_co) a.group = Group::coshared;
    else if (!inc.any || inc.max < thr_ctl) a.group = Group::control;
    else a.group = Group::neither;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<RankedArticle> rank_articles_by_coshare(const CoShareGraph& graph,
                                                    std::span<const EdgeScore> scores,
                                                    std::string_view domain, std::size_t k,
                                                    Aggregation aggregation) {
  const auto edge_score = scores_by_edge(graph, scores);
  std::vector<RankedArticle> out;
  const auto& urls = graph.reliable_urls();
  for (std::uint32_t v = 0; v < urls.size(); ++v) {
    if (corpus::url_domain(urls[v]) != domain) continue;
    const auto inc = incident_scores(graph, edge_score, v);
    out.push_back({urls[v], aggregation == Aggregation::sum ? inc.sum : inc.max, inc.max, 0});
  }
  if (out.empty()) throw DataError("domain " + std::string(domain) + " has no URLs in the co-share graph");
  std::sort(out.begin(), out.end(), [](const RankedArticle& a, const RankedArticle& b) {
    return a.agg_score != b.agg_score ? a.agg_score > b.agg_score : a.url < b.url;
  });
  if (k > 0 && out.size() > k) out.resize(k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

SharerSummary summarize_counts(std::vector<double> counts) {
  SharerSummary s;
  s.n_articles = counts.size();
  if (counts.empty()) return s;
  double sum = 0.0;
  for (double c : counts) sum += c;
  s.mean = sum / static_cast<double>(counts.size());
  std::sort(counts.begin(), counts.end());
  const std::size_t n = counts.size();
  s.median = n % 2 == 1 ? counts[n / 2] : 0.5 * (counts[n / 2 - 1] + counts[n / 2]);
  if (n > 1) {
    double ss = 0.0;
    for (double c : counts) ss += (c - s.mean) * (c - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

GroupSharerStats group_descriptive_stats(const std::vector<corpus::ShareRecord>& records,
                                         std::span<const GroupAssignment> groups,
                                         std::span<const std::string> fake_urls) {
  std::unordered_map<std::string_view, int> role;  // 0 coshared, 1 control, 2 fake
  for (const auto& g : groups) {
    if (g.group == Group::coshared) role[g.url] = 0;
    else if (g.group == Group::control) role[g.url] = 1;
  }
  for (const auto& f : fake_urls) role.emplace(f, 2);

  std::unordered_map<std::string_view, std::unordered_set<std::string_view>> sharers;
  std::unordered_map<std::string_view, std::int64_t> followers;
  for (const auto& r : records) {
    if (!role.contains(r.url)) continue;
    sharers[r.url].insert(r.user_id);
    if (r.followers) followers[r.user_id] = *r.followers;
  }

  std::array<std::vector<double>, 3> counts;
  std::array<std::unordered_set<std::string_view>, 3> users;
  // Iterate in a fixed order so floating-point sums are reproducible.
  std::map<std::string_view, int> ordered(role.begin(), role.end());
  for (const auto& [url, r] : ordered) {
    auto it = sharers.find(url);
    const std::size_t n = it == sharers.end() ? 0 : it->second.size();
    counts[r].push_back(static_cast<double>(n));
    if (it != sharers.end()) users[r].insert(it->second.begin(), it->second.end());
  }

  GroupSharerStats out;
  SharerSummary* slots[3] = {&out.coshared, &out.control, &out.fake};
  for (int r = 0; r < 3; ++r) {
    *slots[r] = summarize_counts(counts[r]);
    std::vector<std::string_view> ids;
    for (auto u : users[r])
      if (followers.contains(u)) ids.push_back(u);
    if (!ids.empty()) {
      std::sort(ids.begin(), ids.end());
      double sum = 0.0;
      for (auto u : ids) sum += static_cast<double>(followers[u]);
      slots[r]->mean_followers = sum / static_cast<double>(ids.size());
    }
  }
  return out;
}

}  // namespace coshare::graph
