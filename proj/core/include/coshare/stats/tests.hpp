#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coshare::stats {

enum class Alternative { greater, less, two_sided };
enum class ZeroPolicy { discard, pratt };
enum class Method { exact, normal_approx };

std::string_view to_string(Alternative a);
std::string_view to_string(ZeroPolicy z);
std::string_view to_string(Method m);
std::optional<Alternative> parse_alternative(std::string_view s);
std::optional<ZeroPolicy> parse_zero_policy(std::string_view s);

struct TestResult {
  double statistic = 0.0;    // W+ (signed-rank) or U of the first sample (rank-sum)
  double p_value = 1.0;
  double effect_size = 0.0;  // rank-biserial correlation
  double estimate = 0.0;     // Hodges-Lehmann location estimate
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_effective = 0;
  Method method = Method::exact;
  Alternative alternative = Alternative::two_sided;
};

/// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct WilcoxonOptions {
  std::size_t exact_max_n = 25;
  double confidence = 0.95;
};

/// Paired signed-rank test on d = x - y. Throws InsufficientDataError when
/// no nonzero differences remain.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, Alternative alternative,
                                ZeroPolicy zero_policy = ZeroPolicy::discard, const WilcoxonOptions& options = {});

/// Exact null distribution of W+ for the given ranks, as counts indexed by
/// 2*W+ (ranks must be multiples of 1/2).
std::vector<double> signed_rank_counts(std::span<const double> ranks);

struct MannWhitneyOptions {
  std::size_t exact_max_total = 20;
  double confidence = 0.95;
};

/// Two-sample rank-sum test. "less" means a tends to be smaller than b.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative,
                          const MannWhitneyOptions& options = {});

/// k-th smallest (1-based) of the Walsh averages (d_i + d_j)/2, i <= j.
double kth_walsh_average(std::span<const double> sorted_d, std::size_t k);

/// k-th smallest (1-based) of the differences a_i - b_j.
double kth_pairwise_difference(std::span<const double> sorted_a, std::span<const double> sorted_b, std::size_t k);

double normal_cdf(double z);
double normal_quantile(double p);

}  // namespace coshare::stats
