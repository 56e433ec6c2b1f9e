#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "coshare/common/error.hpp"
#include "coshare/library/library.hpp"
#include "coshare/stats/logistic.hpp"
#include "coshare/stats/paired.hpp"
#include "coshare/stats/tests.hpp"

using namespace coshare;
using namespace coshare::stats;

namespace {

// P(W+ >= obs) and P(W+ <= obs) by listing every sign assignment.
std::pair<double, double> enumerate_signed_rank(const std::vector<double>& ranks, double obs) {
  const std::size_t n = ranks.size();
  std::uint64_t ge = 0;
  std::uint64_t le = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) w += ranks[i];
    ge += w >= obs - 1e-9 ? 1 : 0;
    le += w <= obs + 1e-9 ? 1 : 0;
  }
  const double total = std::ldexp(1.0, static_cast<int>(n));
  return {static_cast<double>(ge) / total, static_cast<double>(le) / total};
}

std::vector<double> distinct_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.3, 1.0);
  std::vector<double> v;
  while (v.size() < n) {
    const double x = g(rng);
    bool dup = x == 0.0;
    for (double y : v) dup = dup || std::abs(y) == std::abs(x);
    if (!dup) v.push_back(x);
  }
  return v;
}

}  // namespace

TEST(Ranks, AverageTies) {
  const std::vector<double> v{3, 1, 3, 2, 3};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{4, 1, 4, 2, 4}));
}

TEST(Wilcoxon, IdenticalListsAreRejected) {
  const std::vector<double> x{1, 2, 3};
  try {
    wilcoxon_signed_rank(x, x, Alternative::greater);
    FAIL() << "expected an error";
  } catch (const InsufficientDataError& e) {
    EXPECT_NE(std::string(e.what()).find("no nonzero pairs"), std::string::npos);
  }
}

TEST(Wilcoxon, SmallExampleMatchesEnumeration) {
  const std::vector<double> d{1, 2, 3, -1};
  const std::vector<double> zero(4, 0.0);
  const auto r = wilcoxon_signed_rank(d, zero, Alternative::greater);
  // |d| = 1,2,3,1 -> ranks 1.5, 3, 4, 1.5; W+ = 8.5
  EXPECT_DOUBLE_EQ(r.statistic, 8.5);
  const auto [ge, le] = enumerate_signed_rank({1.5, 3, 4, 1.5}, 8.5);
  EXPECT_EQ(r.p_value, ge);
  EXPECT_EQ(r.method, Method::exact);
  EXPECT_EQ(r.n_effective, 4u);
  (void)le;
}

TEST(Wilcoxon, ExactEqualsEnumerationUpToTwelve) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto d = distinct_values(rng, n);
      const std::vector<double> zero(n, 0.0);
      std::vector<double> abs_d;
      for (double v : d) abs_d.push_back(std::abs(v));
      const auto ranks = average_ranks(abs_d);
      double w = 0;
      for (std::size_t i = 0; i < n; ++i) w += d[i] > 0 ? ranks[i] : 0;
      const auto [ge, le] = enumerate_signed_rank(ranks, w);
      EXPECT_EQ(wilcoxon_signed_rank(d, zero, Alternative::greater).p_value, ge);
      EXPECT_EQ(wilcoxon_signed_rank(d, zero, Alternative::less).p_value, le);
      EXPECT_EQ(wilcoxon_signed_rank(d, zero, Alternative::two_sided).p_value, std::min(1.0, 2 * std::min(ge, le)));
    }
  }
}

TEST(Wilcoxon, NormalApproximationCloseToExact) {
  std::mt19937_64 rng(5);
  WilcoxonOptions approx;
  approx.exact_max_n = 0;
  for (std::size_t n = 10; n <= 25; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto d = distinct_values(rng, n);
      const std::vector<double> zero(n, 0.0);
      for (auto alt : {Alternative::greater, Alternative::less, Alternative::two_sided}) {
        const auto e = wilcoxon_signed_rank(d, zero, alt);
        const auto a = wilcoxon_signed_rank(d, zero, alt, ZeroPolicy::discard, approx);
        ASSERT_EQ(e.method, Method::exact);
        ASSERT_EQ(a.method, Method::normal_approx);
        // Two-sided p doubles the one-sided tail, so its error bound doubles too.
        const double bound = alt == Alternative::two_sided ? 0.02 : 0.01;
        EXPECT_LT(std::abs(e.p_value - a.p_value), bound) << "n=" << n;
      }
    }
  }
}

TEST(Wilcoxon, RankSumIdentityCoherenceAndScale) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {5u, 13u, 30u, 80u}) {
    const auto d = distinct_values(rng, n);
    const std::vector<double> zero(n, 0.0);
    const auto g = wilcoxon_signed_rank(d, zero, Alternative::greater);
    const auto l = wilcoxon_signed_rank(d, zero, Alternative::less);
    const auto t = wilcoxon_signed_rank(d, zero, Alternative::two_sided);
    const double total = static_cast<double>(n * (n + 1)) / 2.0;
    const double w_minus = total - g.statistic;
    EXPECT_DOUBLE_EQ(g.statistic + w_minus, total);
    EXPECT_NEAR(g.effect_size, (g.statistic - w_minus) / total, 1e-15);
    EXPECT_NEAR(t.p_value, std::min(1.0, 2 * std::min(g.p_value, l.p_value)), 1e-15);

    std::vector<double> scaled(d);
    for (auto& v : scaled) v *= 7.5;
    const auto s = wilcoxon_signed_rank(scaled, zero, Alternative::greater);
    EXPECT_EQ(s.statistic, g.statistic);
    EXPECT_EQ(s.p_value, g.p_value);
    EXPECT_EQ(s.effect_size, g.effect_size);
  }
}

TEST(Wilcoxon, ZeroPolicies) {
  const std::vector<double> x{0.0, 0.0, 1.0, 2.0, 3.0, -0.5};
  const std::vector<double> y(6, 0.0);
  const auto discard = wilcoxon_signed_rank(x, y, Alternative::greater, ZeroPolicy::discard);
  const auto pratt = wilcoxon_signed_rank(x, y, Alternative::greater, ZeroPolicy::pratt);
  EXPECT_EQ(discard.n_effective, 4u);
  EXPECT_EQ(pratt.n_effective, 4u);
  // discard: |d| = 1,2,3,0.5 -> ranks 2,3,4,1 ; pratt ranks zeros first: 4,5,6,3
  EXPECT_DOUBLE_EQ(discard.statistic, 9.0);
  EXPECT_DOUBLE_EQ(pratt.statistic, 15.0);
  const auto [ge, le] = enumerate_signed_rank({4, 5, 6, 3}, 15.0);
  EXPECT_EQ(pratt.p_value, ge);
  (void)le;
}

TEST(Wilcoxon, HodgesLehmannInterval) {
  std::mt19937_64 rng(3);
  const auto d = distinct_values(rng, 15);
  std::vector<double> walsh;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j) walsh.push_back((d[i] + d[j]) / 2);
  std::sort(walsh.begin(), walsh.end());
  const std::vector<double> zero(d.size(), 0.0);
  const auto r = wilcoxon_signed_rank(d, zero, Alternative::two_sided);
  ASSERT_EQ(walsh.size(), 120u);
  EXPECT_DOUBLE_EQ(r.estimate, (walsh[59] + walsh[60]) / 2);
  // Exact critical value for n = 15 at alpha = 0.05 (two-sided) is 25.
  EXPECT_DOUBLE_EQ(r.ci_low, walsh[25]);
  EXPECT_DOUBLE_EQ(r.ci_high, walsh[walsh.size() - 26]);
  EXPECT_LE(r.ci_low, r.estimate);
  EXPECT_GE(r.ci_high, r.estimate);
}

TEST(Wilcoxon, SelectionMatchesSortingOnLargeInputs) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0, 1);
  std::vector<double> d(2100);
  for (auto& v : d) v = g(rng);
  std::sort(d.begin(), d.end());
  std::vector<double> walsh;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j) walsh.push_back((d[i] + d[j]) / 2);
  std::sort(walsh.begin(), walsh.end());
  for (std::size_t k : {std::size_t{1}, std::size_t{777}, walsh.size() / 2, walsh.size() - 3, walsh.size()})
    EXPECT_EQ(kth_walsh_average(d, k), walsh[k - 1]) << k;

  std::vector<double> a(1500);
  std::vector<double> b(1400);
  for (auto& v : a) v = g(rng);
  for (auto& v : b) v = g(rng) + 0.2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> diffs;
  for (double x : a)
    for (double y : b) diffs.push_back(x - y);
  std::sort(diffs.begin(), diffs.end());
  for (std::size_t k : {std::size_t{1}, std::size_t{12345}, diffs.size() / 2, diffs.size()})
    EXPECT_EQ(kth_pairwise_difference(a, b, k), diffs[k - 1]) << k;
}

TEST(MannWhitney, SmallSampleExact) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  const auto r = mann_whitney_u(a, b, Alternative::less);
  EXPECT_EQ(r.method, Method::exact);
  EXPECT_EQ(r.p_value, 0.05);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.effect_size, -1.0);
  EXPECT_EQ(mann_whitney_u(a, b, Alternative::greater).p_value, 1.0);
}

TEST(MannWhitney, ExactMatchesSubsetEnumeration) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> val(0, 6);  // ties on purpose
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> a(4);
    std::vector<double> b(6);
    for (auto& v : a) v = val(rng);
    for (auto& v : b) v = val(rng);
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = average_ranks(pooled);
    const double obs = ranks[0] + ranks[1] + ranks[2] + ranks[3];
    int ge = 0, le = 0, total = 0;
    for (unsigned mask = 0; mask < 1024; ++mask) {
      if (__builtin_popcount(mask) != 4) continue;
      double s = 0;
      for (int i = 0; i < 10; ++i)
        if (mask >> i & 1U) s += ranks[static_cast<std::size_t>(i)];
      ++total;
      ge += s >= obs - 1e-9;
      le += s <= obs + 1e-9;
    }
    EXPECT_DOUBLE_EQ(mann_whitney_u(a, b, Alternative::greater).p_value, static_cast<double>(ge) / total);
    EXPECT_DOUBLE_EQ(mann_whitney_u(a, b, Alternative::less).p_value, static_cast<double>(le) / total);
  }
}

TEST(MannWhitney, EqualSingleValues) {
  const std::vector<double> a{2.0};
  const auto r = mann_whitney_u(a, a, Alternative::two_sided);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.effect_size, 0.0);
}

TEST(MannWhitney, NormalApproximationMatchesPermutation) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0, 1);
  std::vector<double> a(200);
  std::vector<double> b(200);
  for (auto& v : a) v = g(rng);
  for (auto& v : b) v = g(rng) + 0.15;
  const auto r = mann_whitney_u(a, b, Alternative::less);
  ASSERT_EQ(r.method, Method::normal_approx);

  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);
  const double obs = std::accumulate(ranks.begin(), ranks.begin() + 200, 0.0);
  std::vector<std::size_t> idx(400);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 perm(7);
  const int resamples = 100000;
  int hits = 0;
  for (int k = 0; k < resamples; ++k) {
    double s = 0;
    // Partial shuffle: the first 200 positions form a uniform random subset.
    for (std::size_t i = 0; i < 200; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, 399);
      std::swap(idx[i], idx[pick(perm)]);
      s += ranks[idx[i]];
    }
    hits += s <= obs + 1e-9;
  }
  const double p_perm = static_cast<double>(hits) / resamples;
  EXPECT_NEAR(r.p_value, p_perm, 0.005) << "perm " << p_perm;
}

// ---------------------------------------------------------------- logistic

namespace {

struct Problem {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Problem simulate(std::mt19937_64& rng, int n, double b0, double b1, double sd) {
  std::normal_distribution<double> g(0, sd);
  std::uniform_real_distribution<double> u(0, 1);
  Problem p;
  p.x.resize(n, 1);
  p.y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p.x(i, 0) = g(rng);
    const double prob = 1.0 / (1.0 + std::exp(-(b0 + b1 * p.x(i, 0))));
    p.y[static_cast<std::size_t>(i)] = u(rng) < prob ? 1 : 0;
  }
  return p;
}

}  // namespace

TEST(Logistic, NullEffect) {
  std::mt19937_64 rng(1);
  const auto p = simulate(rng, 4000, 0.0, 0.0, 1.0);
  const auto r = logistic_regression(p.x, {"x"}, p.y);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(std::abs(r.coefficients.at("x")), 3 * r.std_errors.at("x"));
  EXPECT_NEAR(r.odds_ratios.at("x"), std::exp(r.coefficients.at("x")), 1e-15);
}

TEST(Logistic, RecoversPlantedOddsRatio) {
  std::mt19937_64 rng(2024);
  const double beta = std::log(1.24);
  const auto p = simulate(rng, 10000, -0.3, beta, 2.0);
  const auto r = logistic_regression(p.x, {"x"}, p.y);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.coefficients.at("x"), beta, 0.05);
}

TEST(Logistic, TwoByTwoTableMatchesClosedForm) {
  // Cells: exposure x outcome.
  const int a = 37, b = 63, c = 21, d = 79;  // x=1: 37 yes, 63 no ; x=0: 21 yes, 79 no
  Eigen::MatrixXd x(a + b + c + d, 1);
  std::vector<int> y;
  int row = 0;
  auto add = [&](double xv, int yv, int count) {
    for (int i = 0; i < count; ++i) {
      x(row++, 0) = xv;
      y.push_back(yv);
    }
  };
  add(1, 1, a);
  add(1, 0, b);
  add(0, 1, c);
  add(0, 0, d);
  const auto r = logistic_regression(x, {"exposed"}, y);
  ASSERT_TRUE(r.converged);
  const double log_or = std::log((static_cast<double>(a) * d) / (static_cast<double>(b) * c));
  EXPECT_NEAR(r.coefficients.at("exposed"), log_or, 1e-10);
  EXPECT_NEAR(r.coefficients.at("(intercept)"), std::log(static_cast<double>(c) / d), 1e-10);
  EXPECT_NEAR(r.std_errors.at("exposed"), std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d), 1e-8);
}

TEST(Logistic, GradientAgreesWithFiniteDifferences) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0, 1);
  for (int problem = 0; problem < 20; ++problem) {
    const int n = 200 + 40 * problem;
    const int k = 1 + problem % 4;
    Eigen::MatrixXd feats(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) feats(i, j) = g(rng);
    std::vector<int> y(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < n; ++i) {
      const double eta = 0.2 + feats.row(i).sum() * 0.4;
      y[static_cast<std::size_t>(i)] = u(rng) < 1 / (1 + std::exp(-eta)) ? 1 : 0;
    }
    std::vector<std::string> names;
    for (int j = 0; j < k; ++j) names.push_back("x" + std::to_string(j));
    const auto r = logistic_regression(feats, names, y);
    ASSERT_TRUE(r.converged);
    const auto design = build_design(feats, names, std::nullopt, true);
    Eigen::VectorXd yy(n);
    for (int i = 0; i < n; ++i) yy(i) = y[static_cast<std::size_t>(i)];

    // At the optimum the finite-difference gradient vanishes relative to the
    // log-likelihood scale.
    const double scale = std::abs(logistic_log_likelihood(design.x, yy, r.beta));
    const double h = 1e-5;
    for (Eigen::Index j = 0; j < r.beta.size(); ++j) {
      Eigen::VectorXd up = r.beta, down = r.beta;
      up(j) += h;
      down(j) -= h;
      const double fd = (logistic_log_likelihood(design.x, yy, up) - logistic_log_likelihood(design.x, yy, down)) / (2 * h);
      EXPECT_LT(std::abs(fd) / scale, 1e-6);
    }
    // Away from the optimum, analytic and numeric gradients agree.
    Eigen::VectorXd probe = r.beta.array() + 0.3;
    const auto grad = logistic_gradient(design.x, yy, probe);
    for (Eigen::Index j = 0; j < probe.size(); ++j) {
      Eigen::VectorXd up = probe, down = probe;
      up(j) += h;
      down(j) -= h;
      const double fd = (logistic_log_likelihood(design.x, yy, up) - logistic_log_likelihood(design.x, yy, down)) / (2 * h);
      EXPECT_LT(std::abs(fd - grad(j)) / std::max(1.0, std::abs(grad(j))), 1e-6);
    }
  }
}

TEST(Logistic, SeparationIsFlagged) {
  Eigen::MatrixXd x(20, 1);
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i;
    y.push_back(i >= 10 ? 1 : 0);
  }
  const auto r = logistic_regression(x, {"x"}, y);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.separation);
}

TEST(Logistic, FixedEffectsAndDesignErrors) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> u(0, 1);
  const int n = 6000;
  Eigen::MatrixXd x(n, 1);
  std::vector<int> y;
  std::vector<std::string> fe;
  const std::map<std::string, double> offset{{"a", -1.0}, {"b", 0.0}, {"c", 1.0}};
  const char* names[] = {"a", "b", "c"};
  for (int i = 0; i < n; ++i) {
    const std::string grp = names[i % 3];
    x(i, 0) = g(rng);
    const double eta = offset.at(grp) + 0.5 * x(i, 0);
    y.push_back(u(rng) < 1 / (1 + std::exp(-eta)) ? 1 : 0);
    fe.push_back(grp);
  }
  fe.back() = "singleton";
  const auto r = logistic_regression(x, {"x"}, y, fe);
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.n_observations, static_cast<std::size_t>(n - 1));
  EXPECT_EQ(r.names, (std::vector<std::string>{"(intercept)", "x", "fe[b]", "fe[c]"}));
  EXPECT_NEAR(r.coefficients.at("x"), 0.5, 4 * r.std_errors.at("x"));
  EXPECT_NEAR(r.coefficients.at("fe[c]"), 2.0, 4 * r.std_errors.at("fe[c]"));

  Eigen::MatrixXd constant = Eigen::MatrixXd::Ones(10, 1);
  EXPECT_THROW(logistic_regression(constant, {"k"}, std::vector<int>(10, 1)), ConfigError);
}

// ---------------------------------------------------------------- paired vectors

TEST(Paired, DirectFormula) {
  library::NarrativeLibrary lib;
  lib.entries = {{"a", 1}};
  const auto p = build_paired_vectors(lib, {{"a", 2}, {"x", 2}}, {{"a", 1}, {"y", 3}});
  EXPECT_EQ(p.labels, (std::vector<std::string>{"a"}));
  EXPECT_EQ(p.l_cs, (std::vector<double>{0.5}));
  EXPECT_EQ(p.l_co, (std::vector<double>{0.25}));

  library::NarrativeLibrary absent;
  absent.entries = {{"z", 1}};
  const auto q = build_paired_vectors(absent, {{"a", 2}}, {{"a", 1}});
  EXPECT_EQ(q.l_cs[0], 0.0);
  EXPECT_EQ(q.l_co[0], 0.0);
}

TEST(Paired, RandomizedRecount) {
  std::mt19937_64 rng(50);
  std::uniform_int_distribution<int> pick(0, 79);
  // Articles as raw label occurrence lists.
  std::vector<std::string> cs_occ;
  std::vector<std::string> co_occ;
  for (int i = 0; i < 700; ++i) cs_occ.push_back("n" + std::to_string(pick(rng)));
  for (int i = 0; i < 500; ++i) co_occ.push_back("n" + std::to_string(pick(rng)));
  library::NarrativeLibrary lib;
  for (int i = 0; i < 50; ++i) lib.entries["n" + std::to_string(i * 3 % 97)] = 1;
  LabelCounts cs;
  LabelCounts co;
  for (const auto& l : cs_occ) ++cs[l];
  for (const auto& l : co_occ) ++co[l];
  const auto p = build_paired_vectors(lib, cs, co);
  ASSERT_EQ(p.labels.size(), 50u);
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    const auto c1 = std::count(cs_occ.begin(), cs_occ.end(), p.labels[i]);
    const auto c2 = std::count(co_occ.begin(), co_occ.end(), p.labels[i]);
    EXPECT_DOUBLE_EQ(p.l_cs[i], static_cast<double>(c1) / 700.0);
    EXPECT_DOUBLE_EQ(p.l_co[i], static_cast<double>(c2) / 500.0);
  }
}
