#include "coshare/stats/tests.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "coshare/common/error.hpp"

namespace coshare::stats {

std::string_view to_string(Alternative a) {
  switch (a) {
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
    case Alternative::two_sided: return "two_sided";
  }
  return "two_sided";
}

std::string_view to_string(ZeroPolicy z) { return z == ZeroPolicy::discard ? "discard" : "pratt"; }

std::string_view to_string(Method m) { return m == Method::exact ? "exact" : "normal_approx"; }

std::optional<Alternative> parse_alternative(std::string_view s) {
  if (s == "greater") return Alternative::greater;
  if (s == "less") return Alternative::less;
  if (s == "two_sided" || s == "two-sided") return Alternative::two_sided;
  return std::nullopt;
}

std::optional<ZeroPolicy> parse_zero_policy(std::string_view s) {
  if (s == "discard") return ZeroPolicy::discard;
  if (s == "pratt") return ZeroPolicy::pratt;
  return std::nullopt;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) { return boost::math::quantile(boost::math::normal_distribution<double>(), p); }

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

std::vector<double> signed_rank_counts(std::span<const double> ranks) {
  std::vector<std::size_t> doubled;
  std::size_t total = 0;
  for (double r : ranks) {
    doubled.push_back(static_cast<std::size_t>(std::llround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<double> dp(total + 1, 0.0);
  dp[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t r : doubled) {
    for (std::size_t s = reach + 1; s-- > 0;) dp[s + r] += dp[s];
    reach += r;
  }
  return dp;
}

namespace {

struct Tails {
  double greater;
  double less;
};

// P(X >= obs) and P(X <= obs) from counts indexed by value.
Tails tails_from_counts(const std::vector<double>& counts, std::size_t obs) {
  double total = 0.0;
  double ge = 0.0;
  double le = 0.0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    total += counts[s];
    if (s >= obs) ge += counts[s];
    if (s <= obs) le += counts[s];
  }
  return {ge / total, le / total};
}

double combine(Alternative alt, Tails t) {
  switch (alt) {
    case Alternative::greater: return std::min(1.0, t.greater);
    case Alternative::less: return std::min(1.0, t.less);
    case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(t.greater, t.less));
  }
  return 1.0;
}

double normal_p(Alternative alt, double stat, double mean, double sd) {
  if (!(sd > 0.0)) return 1.0;
  switch (alt) {
    case Alternative::greater: return 1.0 - normal_cdf((stat - mean - 0.5) / sd);
    case Alternative::less: return normal_cdf((stat - mean + 0.5) / sd);
    case Alternative::two_sided: {
      const double z = std::max(0.0, std::abs(stat - mean) - 0.5) / sd;
      return std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    }
  }
  return 1.0;
}

// Largest c with P(W <= c) <= alpha/2 for the untied signed-rank statistic,
// or -1 when none exists.
long long signed_rank_critical(std::size_t n, double alpha, bool exact) {
  const double m = static_cast<double>(n) * static_cast<double>(n + 1) / 4.0;
  if (!exact) {
    const double sd = std::sqrt(static_cast<double>(n) * static_cast<double>(n + 1) * static_cast<double>(2 * n + 1) / 24.0);
    return static_cast<long long>(std::floor(m - normal_quantile(1.0 - alpha / 2.0) * sd));
  }
  std::vector<double> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  const auto counts = signed_rank_counts(ranks);  // indexed by 2W
  const double total = std::ldexp(1.0, static_cast<int>(n));
  double cum = 0.0;
  long long c = -1;
  for (std::size_t s = 0; s < counts.size(); s += 2) {
    cum += counts[s];
    if (cum / total <= alpha / 2.0) c = static_cast<long long>(s / 2);
    else break;
  }
  return c;
}

constexpr std::size_t kMaterializeLimit = 2'000'000;

}  // namespace

double kth_walsh_average(std::span<const double> d, std::size_t k) {
  const std::size_t n = d.size();
  const std::size_t m = n * (n + 1) / 2;
  if (n == 0 || k < 1 || k > m) throw DataError("Walsh average index out of range");
  if (m <= kMaterializeLimit) {
    std::vector<double> w;
    w.reserve(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) w.push_back((d[i] + d[j]) / 2.0);
    std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k - 1), w.end());
    return w[k - 1];
  }
  // Bisection on the pair sum with an O(n) two-pointer count.
  auto count_le = [&](double t) {
    std::size_t count = 0;
    std::size_t j = n;
    for (std::size_t i = 0; i < n; ++i) {
      while (j > i && d[i] + d[j - 1] > t) --j;
      if (j <= i) break;
      count += j - i;
    }
    return count;
  };
  double lo = d.front() + d.front();
  double hi = d.back() + d.back();
  if (count_le(lo) >= k) return lo / 2.0;
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (count_le(mid) >= k) hi = mid;
    else lo = mid;
  }
  double best = -std::numeric_limits<double>::infinity();
  std::size_t j = n;
  for (std::size_t i = 0; i < n; ++i) {
    while (j > i && d[i] + d[j - 1] > hi) --j;
    if (j <= i) break;
    best = std::max(best, d[i] + d[j - 1]);
  }
  return best / 2.0;
}

double kth_pairwise_difference(std::span<const double> a, std::span<const double> b, std::size_t k) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na == 0 || nb == 0 || k < 1 || k > na * nb) throw DataError("pairwise difference index out of range");
  if (na * nb <= kMaterializeLimit) {
    std::vector<double> w;
    w.reserve(na * nb);
    for (double x : a)
      for (double y : b) w.push_back(x - y);
    std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k - 1), w.end());
    return w[k - 1];
  }
  // #(i, j) with a_i - b_j <= t; b sorted ascending.
  auto count_le = [&](double t) {
    std::size_t count = 0;
    std::size_t j = 0;  // first index with b_j >= a_i - t
    for (std::size_t i = 0; i < na; ++i) {
      while (j < nb && b[j] < a[i] - t) ++j;
      count += nb - j;
    }
    return count;
  };
  double lo = a.front() - b.back();
  double hi = a.back() - b.front();
  if (count_le(lo) >= k) return lo;
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (count_le(mid) >= k) hi = mid;
    else lo = mid;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x - hi);
    if (it != b.end()) best = std::max(best, x - *it);
  }
  return best;
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, Alternative alternative,
                                ZeroPolicy zero_policy, const WilcoxonOptions& options) {
  if (x.size() != y.size()) throw DataError("signed-rank test needs paired samples of equal length");
  if (x.empty()) throw InsufficientDataError("signed-rank test needs at least one pair");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];

  std::vector<double> nonzero;
  std::vector<double> ranks;
  if (zero_policy == ZeroPolicy::discard) {
    for (double v : d)
      if (v != 0.0) nonzero.push_back(v);
    std::vector<double> abs_d;
    for (double v : nonzero) abs_d.push_back(std::abs(v));
    ranks = average_ranks(abs_d);
  } else {
    std::vector<double> abs_d;
    for (double v : d) abs_d.push_back(std::abs(v));
    const auto all = average_ranks(abs_d);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0.0) {
        nonzero.push_back(d[i]);
        ranks.push_back(all[i]);
      }
  }
  const std::size_t n = nonzero.size();
  if (n == 0) throw InsufficientDataError("no nonzero pairs");

  TestResult r;
  r.alternative = alternative;
  r.n_effective = n;
  double w_plus = 0.0;
  double w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) (nonzero[i] > 0 ? w_plus : w_minus) += ranks[i];
  r.statistic = w_plus;
  r.effect_size = (w_plus - w_minus) / (w_plus + w_minus);

  if (n <= options.exact_max_n) {
    r.method = Method::exact;
    const auto counts = signed_rank_counts(ranks);
    r.p_value = combine(alternative, tails_from_counts(counts, static_cast<std::size_t>(std::llround(2.0 * w_plus))));
  } else {
    r.method = Method::normal_approx;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double rk : ranks) {
      sum += rk;
      sum_sq += rk * rk;
    }
    r.p_value = normal_p(alternative, w_plus, sum / 2.0, std::sqrt(sum_sq / 4.0));
  }

  // Hodges-Lehmann pseudomedian and its interval over Walsh averages.
  std::sort(nonzero.begin(), nonzero.end());
  const std::size_t m = n * (n + 1) / 2;
  r.estimate = m % 2 == 1 ? kth_walsh_average(nonzero, (m + 1) / 2)
                          : (kth_walsh_average(nonzero, m / 2) + kth_walsh_average(nonzero, m / 2 + 1)) / 2.0;
  const long long c = std::clamp<long long>(
      signed_rank_critical(n, 1.0 - options.confidence, n <= options.exact_max_n), 0, static_cast<long long>((m - 1) / 2));
  r.ci_low = kth_walsh_average(nonzero, static_cast<std::size_t>(c) + 1);
  r.ci_high = kth_walsh_average(nonzero, m - static_cast<std::size_t>(c));
  return r;
}

namespace {

// Counts of the rank sum of a size-k subset, indexed by twice the sum.
std::vector<double> rank_sum_counts(std::span<const double> ranks, std::size_t k) {
  std::size_t total = 0;
  std::vector<std::size_t> doubled;
  for (double r : ranks) {
    doubled.push_back(static_cast<std::size_t>(std::llround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<std::vector<double>> dp(k + 1, std::vector<double>(total + 1, 0.0));
  dp[0][0] = 1.0;
  for (std::size_t r : doubled)
    for (std::size_t used = k; used-- > 0;)
      for (std::size_t s = total - r + 1; s-- > 0;)
        if (dp[used][s] != 0.0) dp[used + 1][s + r] += dp[used][s];
  return dp[k];
}

// Largest c with P(U <= c) <= alpha/2 for untied samples of sizes na, nb.
long long rank_sum_critical(std::size_t na, std::size_t nb, double alpha, bool exact) {
  const double mean = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  if (!exact) {
    const double sd = std::sqrt(static_cast<double>(na) * static_cast<double>(nb) * static_cast<double>(na + nb + 1) / 12.0);
    return static_cast<long long>(std::floor(mean - normal_quantile(1.0 - alpha / 2.0) * sd));
  }
  std::vector<double> ranks(na + nb);
  std::iota(ranks.begin(), ranks.end(), 1.0);
  const auto counts = rank_sum_counts(ranks, na);
  double total = 0.0;
  for (double c : counts) total += c;
  const std::size_t offset = na * (na + 1);  // 2 * minimal rank sum
  double cum = 0.0;
  long long c = -1;
  for (std::size_t s = offset; s < counts.size(); s += 2) {
    cum += counts[s];
    if (cum / total <= alpha / 2.0) c = static_cast<long long>((s - offset) / 2);
    else break;
  }
  return c;
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative,
                          const MannWhitneyOptions& options) {
  if (a.empty() || b.empty()) throw InsufficientDataError("rank-sum test needs two non-empty samples");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = average_ranks(pooled);
  double r_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) r_a += ranks[i];
  const double u = r_a - static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;
  const double nab = static_cast<double>(na) * static_cast<double>(nb);

  TestResult r;
  r.alternative = alternative;
  r.n_effective = n;
  r.statistic = u;
  r.effect_size = 2.0 * u / nab - 1.0;
  if (n <= options.exact_max_total) {
    r.method = Method::exact;
    const auto counts = rank_sum_counts(ranks, na);
    r.p_value = combine(alternative, tails_from_counts(counts, static_cast<std::size_t>(std::llround(2.0 * r_a))));
  } else {
    r.method = Method::normal_approx;
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i + 1;
      while (j < n && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
    const double nn = static_cast<double>(n);
    const double var = nab / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    r.p_value = normal_p(alternative, u, nab / 2.0, std::sqrt(std::max(0.0, var)));
  }

  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::size_t m = na * nb;
  r.estimate = m % 2 == 1 ? kth_pairwise_difference(sa, sb, (m + 1) / 2)
                          : (kth_pairwise_difference(sa, sb, m / 2) + kth_pairwise_difference(sa, sb, m / 2 + 1)) / 2.0;
  const long long c = std::clamp<long long>(
      rank_sum_critical(na, nb, 1.0 - options.confidence, n <= options.exact_max_total), 0,
      static_cast<long long>((m - 1) / 2));
  r.ci_low = kth_pairwise_difference(sa, sb, static_cast<std::size_t>(c) + 1);
  r.ci_high = kth_pairwise_difference(sa, sb, m - static_cast<std::size_t>(c));
  return r;
}

}  // namespace coshare::stats
