#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "coshare/common/error.hpp"
#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/groups.hpp"
#include "coshare/graph/io.hpp"
#include "coshare/graph/null_model.hpp"
#include "coshare/graph/thresholds.hpp"
#include "unit/oracles.hpp"
#include "unit/test_support.hpp"

using namespace coshare;
using namespace coshare::graph;
using corpus::ShareRecord;

namespace {

ShareRecord share(const std::string& user, const std::string& url) { return {user, url, 0, std::nullopt}; }

UrlClassifier by_prefix() {
  return [](std::string_view url) {
    if (url.starts_with("fake.com") || url.starts_with("fake2.com")) return corpus::OutletKind::fake;
    if (url.starts_with("unknown")) return corpus::OutletKind::unknown;
    return corpus::OutletKind::reliable;
  };
}

std::uint64_t weight_of(const CoShareGraph& g, const std::string& f, const std::string& r) {
  for (const auto& e : g.edge_list())
    if (e.fake_url == f && e.reliable_url == r) return e.weight;
  return 0;
}

double relative_error(double got, const test::Big& want) {
  return std::fabs(static_cast<double>((test::Big(got) - want) / want));
}

}  // namespace

TEST(CoShareGraph, SetIntersectionWeights) {
  std::vector<ShareRecord> recs = {share("u1", "fake.com/F1"), share("u1", "main.com/R1"),
                                   share("u2", "fake.com/F1"), share("u2", "main.com/R1"),
                                   share("u3", "fake.com/F1"), share("u3", "main.com/R2"),
                                   share("u3", "main.com/R2"), share("u4", "unknown.org/x")};
  const auto g = build_bipartite_coshare(recs, by_prefix());
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(weight_of(g, "fake.com/F1", "main.com/R1"), 2u);
  EXPECT_EQ(weight_of(g, "fake.com/F1", "main.com/R2"), 1u);
  EXPECT_TRUE(build_bipartite_coshare({}, by_prefix()).empty());
}

TEST(CoShareGraph, EightSharedUsersGiveWeightEight) {
  std::vector<ShareRecord> recs;
  for (int u = 0; u < 8; ++u) {
    recs.push_back(share("u" + std::to_string(u), "fake.com/story"));
    recs.push_back(share("u" + std::to_string(u), "washingtonpost.com/article"));
  }
  recs.push_back(share("solo", "fake.com/story"));
  const auto g = build_bipartite_coshare(recs, by_prefix());
  EXPECT_EQ(weight_of(g, "fake.com/story", "washingtonpost.com/article"), 8u);
}

TEST(CoShareGraph, MatchesBruteForceIntersections) {
  std::mt19937 gen(3);
  std::vector<ShareRecord> recs;
  std::map<std::string, std::set<std::string>> by_user;
  for (int u = 0; u < 200; ++u) {
    const int n = 1 + static_cast<int>(gen() % 8);
    for (int i = 0; i < n; ++i) {
      const bool fake = gen() % 3 == 0;
      const std::string url = (fake ? "fake.com/" : "main.com/") + std::to_string(gen() % 15);
      recs.push_back(share("u" + std::to_string(u), url));
      by_user["u" + std::to_string(u)].insert(url);
    }
  }
  const auto g = build_bipartite_coshare(recs, by_prefix());
  std::set<std::string> fakes, rels;
  for (const auto& r : recs) (r.url.starts_with("fake") ? fakes : rels).insert(r.url);
  std::size_t nonzero = 0;
  for (const auto& f : fakes) {
    for (const auto& r : rels) {
      std::uint64_t w = 0;
      for (const auto& [u, urls] : by_user) w += urls.count(f) && urls.count(r);
      EXPECT_EQ(weight_of(g, f, r), w);
      nonzero += w > 0;
    }
  }
  EXPECT_EQ(g.edge_count(), nonzero);

  std::uint64_t deg_sum = 0;
  for (std::uint32_t v = 0; v < g.fake_urls().size(); ++v) deg_sum += g.fake_degree(v);
  for (std::uint32_t v = 0; v < g.reliable_urls().size(); ++v) deg_sum += g.reliable_degree(v);
  EXPECT_EQ(deg_sum, 2 * g.total_weight());
}

TEST(NullModel, SingleEdgeClosedForm) {
  for (std::uint64_t w : {1u, 3u, 10u, 40u}) {
    const auto g = CoShareGraph::from_edges({{"f", "r", w}});
    const auto s = score_edges(g);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0].significance / std::pow(0.5, static_cast<double>(w)), 1.0, 1e-13);
    EXPECT_NEAR(s[0].score, static_cast<double>(w) * std::log(2.0), 1e-12);
  }
}

TEST(NullModel, MonotoneInWeightAndDegree) {
  // Same endpoint degrees, different weights.
  for (std::uint64_t T : {50u, 500u, 5000u}) {
    double prev = 2.0;
    const std::uint64_t k = T / 4;
    const auto mode = static_cast<std::uint64_t>(std::floor((T + 1) * edge_probability(k, k, T)));
    for (std::uint64_t w = std::max<std::uint64_t>(1, mode); w < mode + 30; ++w) {
      const double p = edge_probability(k, k, T);
      const double sig = std::exp(log_binomial_upper_tail(T, p, w));
      EXPECT_LT(sig, prev);
      prev = sig;
    }
    double prev_deg = 0.0;
    for (std::uint64_t k = 5; k < 50; k += 5) {
      const double sig = std::exp(log_binomial_upper_tail(T, edge_probability(k, 40, T), 4));
      EXPECT_GT(sig, prev_deg);
      prev_deg = sig;
    }
  }
  const auto g = CoShareGraph::from_edges({{"f1", "r1", 5}, {"f2", "r2", 2}, {"f1", "r2", 1}, {"f2", "r1", 4}});
  // f1 and f2 both have degree 6, r1 9, r2 3: compare edges on (f1,r1) w=5 and a same-degree pair.
  const auto s = score_edges(g);
  EXPECT_GT(s[0].score, 0.0);
  const auto g2 = CoShareGraph::from_edges({{"a", "x", 5}, {"b", "y", 2}, {"a", "y", 2}, {"b", "x", 5}});
  const auto s2 = score_edges(g2);  // all degrees 7: edges (a,x)=5 and (a,y)=2
  EXPECT_GT(s2[0].score, s2[1].score);
}

TEST(NullModel, MatchesArbitraryPrecisionOracleOnRandomGraphs) {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<CoShareEdge> edges;
    for (int f = 0; f < 15; ++f)
      for (int r = 0; r < 15; ++r)
        if (gen() % 3 != 0) edges.push_back({"f" + std::to_string(f), "r" + std::to_string(r), 1 + gen() % (trial == 0 ? 5 : 60)});
    const auto g = CoShareGraph::from_edges(edges);
    ASSERT_LE(g.total_weight(), 10000u);
    const auto scores = score_edges(g);
    for (const auto& s : scores) {
      const auto& e = g.edges()[s.edge];
      const auto p = test::edge_probability_oracle(g.fake_degree(e.fake), g.reliable_degree(e.reliable), g.total_weight());
      const auto want = test::binomial_upper_tail_oracle(g.total_weight(), p, e.weight);
      EXPECT_LT(relative_error(s.significance, want), 1e-12) << "w=" << e.weight;
      const double want_score = -static_cast<double>(boost::multiprecision::log(want));
      if (want_score > 1e-3) EXPECT_LT(std::fabs(s.score - want_score) / want_score, 1e-12);
      else EXPECT_NEAR(s.score, want_score, 1e-15);
    }
  }
}

TEST(NullModel, LowerTailBranchAndExtremeTails) {
  // w at or below the mode goes through the complement branch.
  for (std::uint64_t n : {20u, 1000u, 9000u}) {
    for (double p : {0.001, 0.01, 0.2, 0.5}) {
      const auto mode = static_cast<std::uint64_t>(std::floor((n + 1) * p));
      for (std::uint64_t k : {std::uint64_t{1}, mode, mode + 1, mode + 5, std::min<std::uint64_t>(n, mode * 3 + 10)}) {
        if (k == 0 || k > n) continue;
        const auto want = test::binomial_upper_tail_oracle(n, test::Big(p), k);
        const double log_got = log_binomial_upper_tail(n, p, k);
        if (want > test::Big("1e-300")) {
          EXPECT_LT(relative_error(std::exp(log_got), want), 1e-12) << n << " " << p << " " << k;
        } else {
          const double lw = static_cast<double>(boost::multiprecision::log(want));
          EXPECT_LT(std::fabs(log_got - lw) / std::fabs(lw), 1e-13) << n << " " << p << " " << k;
        }
      }
    }
  }
  // Deep tail beyond double range is still finite in log space.
  const double lt = log_binomial_upper_tail(10000, 1e-4, 500);
  const auto want = boost::multiprecision::log(test::binomial_upper_tail_oracle(10000, test::Big("1e-4"), 500));
  EXPECT_LT(std::fabs(lt - static_cast<double>(want)) / std::fabs(static_cast<double>(want)), 1e-12);
}

TEST(NullModel, IncompleteBetaRegimeAgreesWithSummation) {
  const std::uint64_t n = 3'000'000;
  for (double p : {1e-6, 1e-5}) {
    for (std::uint64_t k : {5u, 40u, 120u}) {
      const auto want = test::binomial_upper_tail_oracle(n, test::Big(p), k);
      const double got = log_binomial_upper_tail(n, p, k);
      const double w = static_cast<double>(boost::multiprecision::log(want));
      EXPECT_LT(std::fabs(got - w) / std::max(1.0, std::fabs(w)), 1e-9) << p << " " << k;
    }
  }
}

TEST(NullModel, EmptyGraphIsAnError) {
  EXPECT_THROW(score_edges(CoShareGraph{}), DataError);
}

namespace {

CoShareGraph grid_graph(int nf, int nr) {
  std::vector<CoShareEdge> edges;
  for (int f = 0; f < nf; ++f)
    for (int r = 0; r < nr; ++r) edges.push_back({"f" + std::to_string(f), "r" + std::to_string(r), 1});
  return CoShareGraph::from_edges(edges);
}

std::vector<EdgeScore> with_scores(const CoShareGraph& g, const std::function<double(std::size_t)>& f) {
  std::vector<EdgeScore> s(g.edge_count());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {static_cast<std::uint32_t>(i), std::exp(-f(i)), f(i)};
  return s;
}

}  // namespace

TEST(Thresholds, QuantileType7) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0 / 3.0), 2.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.99), 3.97);
}

TEST(Thresholds, ConstantScores) {
  const auto g = grid_graph(30, 30);
  const auto s = with_scores(g, [](std::size_t) { return 2.75; });
  SamplingOptions opt;
  opt.n_samples = 50;
  opt.sample_dim = 10;
  opt.seed = 5;
  const auto q = default_quantiles();
  const auto est = estimate_quantile_thresholds(g, s, q, opt);
  ASSERT_EQ(est.size(), 7u);
  for (const auto& e : est) {
    EXPECT_DOUBLE_EQ(e.point, 2.75);
    EXPECT_DOUBLE_EQ(e.ci_low, 2.75);
    EXPECT_DOUBLE_EQ(e.ci_high, 2.75);
  }
}

TEST(Thresholds, UniformScoresRecoverQuantile) {
  const auto g = grid_graph(200, 200);
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> vals(g.edge_count());
  for (auto& v : vals) v = u(gen);
  const auto s = with_scores(g, [&](std::size_t i) { return vals[i]; });
  SamplingOptions opt;
  opt.n_samples = 100;
  opt.sample_dim = 100;
  opt.seed = 1;
  const double q = 0.99;
  const auto est = estimate_quantile_thresholds(g, s, std::span(&q, 1), opt)[0];
  EXPECT_LE(est.ci_low, 0.99);
  EXPECT_GE(est.ci_high, 0.99);
  EXPECT_NEAR(est.point, 0.99, 0.005);
  EXPECT_LE(est.ci_low, est.point);
  EXPECT_LE(est.point, est.ci_high);
}

TEST(Thresholds, DeterministicAcrossThreadCounts) {
  const auto g = grid_graph(60, 50);
  const auto s = with_scores(g, [](std::size_t i) { return std::fmod(i * 0.618033988749, 1.0) * 10; });
  SamplingOptions opt;
  opt.n_samples = 40;
  opt.sample_dim = 20;
  opt.seed = 42;
  const auto q = default_quantiles();
  const auto a = estimate_quantile_thresholds(g, s, q, opt);
  opt.threads = 4;
  const auto b = estimate_quantile_thresholds(g, s, q, opt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].point, b[i].point);
    EXPECT_EQ(a[i].ci_low, b[i].ci_low);
    EXPECT_EQ(a[i].ci_high, b[i].ci_high);
  }
}

TEST(Thresholds, EmptySamplesRetryThenFail) {
  // Two disjoint edges among many nodes: samples of one node per side rarely hit an edge.
  std::vector<CoShareEdge> edges = {{"f0", "r0", 1}};
  for (int i = 1; i < 50; ++i) edges.push_back({"f" + std::to_string(i), "r" + std::to_string(i), 1});
  const auto g = CoShareGraph::from_edges(edges);
  const auto s = score_edges(g);
  SamplingOptions opt;
  opt.n_samples = 5;
  opt.sample_dim = 1;
  opt.max_retries = 0;
  const double q = 0.5;
  EXPECT_THROW(estimate_quantile_thresholds(g, s, std::span(&q, 1), opt), DataError);
  opt.max_retries = 100000;
  EXPECT_NO_THROW(estimate_quantile_thresholds(g, s, std::span(&q, 1), opt));
  opt.n_samples = 1;
  EXPECT_THROW(estimate_quantile_thresholds(g, s, std::span(&q, 1), opt), ConfigError);
}

namespace {

std::vector<ThresholdEstimate> fixed_thresholds(double t99, double t95) {
  ThresholdEstimate a{0.99, t99, t99, t99, 2, 1, 0};
  ThresholdEstimate b{0.95, t95, t95, t95, 2, 1, 0};
  return {a, b};
}

}  // namespace

TEST(Groups, TieRulesAndNeither) {
  const auto catalog = test::small_catalog();
  const auto g = CoShareGraph::from_edges({{"fake.com/1", "main.com/at", 1},
                                           {"fake.com/1", "main.com/low", 1},
                                           {"fake.com/1", "main.com/mid", 1},
                                           {"fake.com/1", "main.com/ctl", 1},
                                           {"fake.com/1", "minor.com/x", 1}});
  // Edge order follows reliable URL order: at, ctl, low, mid, minor.
  const std::vector<double> vals = {5.0, 3.0, 1.0, 4.0, 9.0};
  const auto s = with_scores(g, [&](std::size_t i) { return vals[i]; });
  const std::vector<std::string> cands = {"main.com/at", "main.com/low", "main.com/mid", "main.com/ctl",
                                          "main.com/noedge", "minor.com/x"};
  const auto groups = assign_groups(g, s, fixed_thresholds(5.0, 3.0), catalog, cands);
  std::map<std::string, Group> by;
  for (const auto& a : groups) by[a.url] = a.group;
  EXPECT_EQ(by.size(), 5u);  // minor.com is not mainstream
  EXPECT_EQ(by["main.com/at"], Group::coshared);
  EXPECT_EQ(by["main.com/ctl"], Group::neither);  // exactly at the control threshold
  EXPECT_EQ(by["main.com/low"], Group::control);
  EXPECT_EQ(by["main.com/mid"], Group::neither);
  EXPECT_EQ(by["main.com/noedge"], Group::control);
  for (const auto& a : groups) {
    if (a.group == Group::coshared) EXPECT_GE(a.max_score, 5.0);
    if (a.group == Group::control) EXPECT_LT(a.max_score, 3.0);
  }
  EXPECT_THROW(assign_groups(g, s, fixed_thresholds(5.0, 3.0), catalog, cands, {0.98, 0.95}), ConfigError);
}

TEST(Groups, PlantedCliqueIsExactlyTheCosharedSet) {
  // 20 planted edges among exactly 2000 edges, so the 0.99 quantile sits right below them.
  std::vector<ShareRecord> recs;
  std::vector<std::string> planted;
  for (int r = 0; r < 10; ++r) planted.push_back("main.com/planted" + std::to_string(r));
  for (int u = 0; u < 50; ++u) {
    const auto user = "clique" + std::to_string(u);
    recs.push_back(share(user, "fake.com/a"));
    recs.push_back(share(user, "fake.com/b"));
    for (const auto& p : planted) recs.push_back(share(user, p));
  }
  std::mt19937 gen(23);
  std::vector<std::pair<int, int>> pairs;
  for (int f = 0; f < 40; ++f)
    for (int r = 0; r < 60; ++r) pairs.emplace_back(f, r);
  std::shuffle(pairs.begin(), pairs.end(), gen);
  pairs.resize(1980);
  int user = 0;
  for (const auto& [f, r] : pairs) {
    const int copies = 1 + static_cast<int>(gen() % 2);
    for (int c = 0; c < copies; ++c) {
      const auto id = "bg" + std::to_string(user++);
      recs.push_back(share(id, "fake2.com/" + std::to_string(f)));
      recs.push_back(share(id, "main.com/bg" + std::to_string(r)));
    }
  }
  const auto g = build_bipartite_coshare(recs, by_prefix());
  ASSERT_EQ(g.edge_count(), 2000u);
  const auto s = score_edges(g);
  SamplingOptions opt;
  opt.n_samples = 2;
  opt.sample_dim = 100000;
  const auto thr = estimate_quantile_thresholds(g, s, default_quantiles(), opt);

  // Oracle: exact significance ranks; the top-1% edge set must be the planted edges.
  std::vector<std::pair<test::Big, std::uint32_t>> exact;
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    exact.emplace_back(test::binomial_upper_tail_oracle(
                           g.total_weight(),
                           test::edge_probability_oracle(g.fake_degree(e.fake), g.reliable_degree(e.reliable), g.total_weight()),
                           e.weight),
                       i);
  }
  std::sort(exact.begin(), exact.end());
  std::set<std::string> top_urls;
  for (int i = 0; i < 20; ++i) top_urls.insert(g.reliable_urls()[g.edges()[exact[i].second].reliable]);
  EXPECT_EQ(top_urls, std::set<std::string>(planted.begin(), planted.end()));

  std::vector<std::string> cands(g.reliable_urls().begin(), g.reliable_urls().end());
  const auto groups = assign_groups(g, s, thr, test::small_catalog(), cands);
  std::set<std::string> coshared;
  for (const auto& a : groups)
    if (a.group == Group::coshared) coshared.insert(a.url);
  EXPECT_EQ(coshared, top_urls);
}

TEST(Ranking, SingleUrlAndTieBreak) {
  const auto g = CoShareGraph::from_edges({{"f1", "d.com/b", 1}, {"f1", "d.com/a", 1}, {"f1", "d.com/c", 1},
                                           {"f1", "solo.com/x", 1}});
  // Reliable order: d.com/a, d.com/b, d.com/c, solo.com/x
  const std::vector<double> vals = {4.0, 9.1, 4.0, 1.0};
  const auto s = with_scores(g, [&](std::size_t i) { return vals[i]; });
  const auto solo = rank_articles_by_coshare(g, s, "solo.com", 5);
  ASSERT_EQ(solo.size(), 1u);
  EXPECT_EQ(solo[0].rank, 1u);
  const auto r = rank_articles_by_coshare(g, s, "d.com", 0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].url, "d.com/b");
  EXPECT_EQ(r[1].url, "d.com/a");
  EXPECT_EQ(r[2].url, "d.com/c");
  EXPECT_THROW(rank_articles_by_coshare(g, s, "absent.com", 3), DataError);
}

TEST(Ranking, SumsMatchRecomputationFromEdgeList) {
  std::mt19937 gen(5);
  std::vector<CoShareEdge> edges;
  for (int f = 0; f < 12; ++f)
    for (int r = 0; r < 20; ++r)
      if (gen() % 2) edges.push_back({"f" + std::to_string(f), "site.com/" + std::to_string(r), 1 + gen() % 9});
  const auto g = CoShareGraph::from_edges(edges);
  const auto s = score_edges(g);
  std::map<std::string, double> sum;
  for (const auto& e : s) sum[g.edge(e.edge).reliable_url] += -std::log(e.significance);
  const auto r = rank_articles_by_coshare(g, s, "site.com", 0);
  ASSERT_EQ(r.size(), sum.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(r[i].agg_score, sum[r[i].url], 1e-9 * std::max(1.0, sum[r[i].url]));
    if (i > 0) EXPECT_GE(r[i - 1].agg_score, r[i].agg_score);
  }
}

TEST(DescriptiveStats, MeanMedian) {
  const auto s = summarize_counts({3, 5, 7});
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.median, 5.0);
  EXPECT_DOUBLE_EQ(s.sd, 2.0);
}

TEST(DescriptiveStats, RecoversGeneratedSharerRatio) {
  std::mt19937 gen(31);
  std::vector<ShareRecord> recs;
  std::vector<GroupAssignment> groups;
  int next_user = 0;
  auto add_url = [&](const std::string& url, int lo, int hi, Group grp) {
    const int n = lo + static_cast<int>(gen() % (hi - lo + 1));
    for (int i = 0; i < n; ++i) {
      auto rec = share("u" + std::to_string(next_user++ % 5000), url);
      rec.followers = 100;
      recs.push_back(rec);
    }
    groups.push_back({url, "main.com", grp, 0, 0});
  };
  for (int i = 0; i < 80; ++i) add_url("main.com/c" + std::to_string(i), 100, 140, Group::coshared);
  for (int i = 0; i < 80; ++i) add_url("main.com/k" + std::to_string(i), 50, 70, Group::control);
  const auto st = group_descriptive_stats(recs, groups, {});
  EXPECT_NEAR(st.coshared.mean / st.control.mean, 2.0, 0.2);
  EXPECT_EQ(st.coshared.n_articles, 80u);
  ASSERT_TRUE(st.coshared.mean_followers.has_value());
  EXPECT_DOUBLE_EQ(*st.coshared.mean_followers, 100.0);
  EXPECT_EQ(st.fake.n_articles, 0u);
}

TEST(GraphIo, RoundTrips) {
  const auto dir = test::scratch_dir("graph_io");
  const auto g = CoShareGraph::from_edges({{"f1", "r1", 3}, {"f2", "r1", 1}, {"f1", "r2", 2}});
  const auto s = score_edges(g);
  write_edges_tsv(dir / "edges.tsv", g, s);
  const auto back = read_edges_tsv(dir / "edges.tsv");
  ASSERT_EQ(back.graph.edge_count(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.graph.edge(i), g.edge(i));
    EXPECT_EQ(back.scores[i].score, s[i].score);
    EXPECT_EQ(back.scores[i].significance, s[i].significance);
  }
  const auto thr = fixed_thresholds(1.5, 0.25);
  write_thresholds_json(dir / "t.json", thr);
  const auto tb = read_thresholds_json(dir / "t.json");
  ASSERT_EQ(tb.size(), 2u);
  EXPECT_EQ(tb[0].point, 1.5);
  std::vector<GroupAssignment> gs = {{"main.com/a", "main.com", Group::control, 0.1, 0.30000000000000004}};
  write_groups_tsv(dir / "g.tsv", gs);
  const auto gb = read_groups_tsv(dir / "g.tsv");
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_EQ(gb[0].agg_score, 0.30000000000000004);
  EXPECT_EQ(gb[0].group, Group::control);
}
