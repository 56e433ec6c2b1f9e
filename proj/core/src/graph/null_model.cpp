#include "coshare/graph/null_model.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "coshare/common/error.hpp"
#include "coshare/common/log.hpp"
#include "coshare/common/parallel.hpp"

namespace coshare::graph {

namespace {

// stirlerr(n) = ln(n!) - [(n + 1/2) ln n - n + ln sqrt(2 pi)] for n = 0..15.
constexpr std::array<double, 16> kStirlerrSmall = {
    0.0,
    0.08106146679532725821967026,
    0.04134069595540929409382208,
    0.02767792568499833914878929,
    0.02079067210376509311152277,
    0.01664469118982119216319487,
    0.01387612882307074799874573,
    0.01189670994589177009505572,
    0.01041126526197209649747857,
    0.009255462182712732917728637,
    0.008330563433362871256469319,
    0.007573675487951840794972024,
    0.006942840107209529865664153,
    0.006408994188004207068439631,
    0.005951370112758847735624416,
    0.00555473355196280137103869,
};

double stirlerr(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) return kStirlerrSmall[static_cast<std::size_t>(n)];
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x ln(x / np) + np - x, evaluated without cancellation.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    if (std::fabs(s) < std::numeric_limits<double>::min()) return s;
    double ej = 2 * x * v;
    v = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

// Sum of pmf ratios starting at 1 for the term at `start`, walking away from
// the mode. `up` selects the direction.
double tail_ratio_sum(double n, double p, double q, double start, bool up) {
  double s = 1.0;
  double t = 1.0;
  double x = start;
  constexpr double eps = 1e-17;
  while (true) {
    double r;
    if (up) {
      if (x >= n) break;
      r = (n - x) / (x + 1.0) * (p / q);
      x += 1.0;
    } else {
      if (x <= 0.0) break;
      r = x / (n - x + 1.0) * (q / p);
      x -= 1.0;
    }
    t *= r;
    s += t;
    if (r < 1.0 && t * r / (1.0 - r) < eps * s) break;
    if (t == 0.0) break;
  }
  return s;
}

double log_upper_tail_sum(std::uint64_t n, double p, std::uint64_t k) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double mode = std::floor((nd + 1.0) * p);
  const double kd = static_cast<double>(k);
  if (kd > mode) {
    const double lp = log_binomial_pmf(n, p, k);
    return lp + std::log(tail_ratio_sum(nd, p, q, kd, true));
  }
  // Complement of the lower tail P(X <= k - 1).
  const double lp = log_binomial_pmf(n, p, k - 1);
  const double lower = std::exp(lp + std::log(tail_ratio_sum(nd, p, q, kd - 1.0, false)));
  if (lower >= 1.0) return std::log(std::numeric_limits<double>::denorm_min());
  return std::log1p(-lower);
}

}  // namespace

double log_binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  const double q = 1.0 - p;
  const double nd = static_cast<double>(n);
  const double x = static_cast<double>(k);
  if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (q == 0.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  if (k == 0) {
    if (n == 0) return 0.0;
    return p < 0.1 ? -bd0(nd, nd * q) - nd * p : nd * std::log(q);
  }
  if (k == n) return q < 0.1 ? -bd0(nd, nd * p) - nd * q : nd * std::log(p);
  const double lc = stirlerr(nd) - stirlerr(x) - stirlerr(nd - x) - bd0(x, nd * p) -
                    bd0(nd - x, nd * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / nd);
  return lc - 0.5 * lf;
}

double log_binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("binomial probability outside [0, 1]");
  if (k == 0) return 0.0;
  if (k > n || p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return 0.0;
  if (n > kIncompleteBetaTrials) {
    // P(X >= k) = I_p(k, n - k + 1).
    const double v = boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
    if (v > std::numeric_limits<double>::min() && v < 1.0) return std::log(v);
  }
  return log_upper_tail_sum(n, p, k);
}

double edge_probability(std::uint64_t k_fake, std::uint64_t k_reliable, std::uint64_t total) {
  if (total == 0) throw DataError("edge probability requested on an empty graph");
  const double t = static_cast<double>(total);
  double p = (static_cast<double>(k_fake) / t) * (static_cast<double>(k_reliable) / t) / 2.0;
  if (p >= 1.0) {
    logger().warn("null-model edge probability {} >= 1 on a degenerate graph; clamping", p);
    p = 1.0 - std::numeric_limits<double>::epsilon();
  }
  return p;
}

std::vector<EdgeScore> score_edges(const CoShareGraph& graph, const ScoreOptions& options) {
  if (graph.empty()) throw DataError("cannot score an empty co-share graph");
  const auto& edges = graph.edges();
  const auto total = graph.total_weight();
  std::vector<EdgeScore> out(edges.size());
  parallel_for(edges.size(), options.threads, [&](std::size_t i) {
    const auto& e = edges[i];
    const double p = edge_probability(graph.fake_degree(e.fake), graph.reliable_degree(e.reliable),
                                      total);
    const double log_sig = std::min(0.0, log_binomial_upper_tail(total, p, e.weight));
    out[i].edge = static_cast<std::uint32_t>(i);
    out[i].score = log_sig == 0.0 ? 0.0 : -log_sig;
    out[i].significance = std::max(std::exp(log_sig), std::numeric_limits<double>::denorm_min());
  });
  return out;
}

}  // namespace coshare::graph
