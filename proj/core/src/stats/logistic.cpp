#include "coshare/stats/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "coshare/common/error.hpp"
#include "coshare/common/log.hpp"

namespace coshare::stats {

namespace {

double log1pexp(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

DesignMatrix build_design(const Eigen::MatrixXd& features, const std::vector<std::string>& feature_names,
                          const std::optional<std::vector<std::string>>& fixed_effect, bool intercept) {
  const auto n = static_cast<std::size_t>(features.rows());
  if (static_cast<std::size_t>(features.cols()) != feature_names.size())
    throw ConfigError("feature names do not match feature columns");
  if (fixed_effect && fixed_effect->size() != n) throw DataError("fixed-effect vector length differs from rows");

  DesignMatrix out;
  std::vector<std::string> levels;
  if (fixed_effect) {
    std::map<std::string, std::size_t> size;
    for (const auto& g : *fixed_effect) ++size[g];
    for (std::size_t i = 0; i < n; ++i)
      if (size[(*fixed_effect)[i]] > 1) out.rows.push_back(i);
    for (const auto& [g, s] : size)
      if (s > 1) levels.push_back(g);
    if (out.rows.size() < n)
      logger().info("dropped {} rows in single-member fixed-effect groups", n - out.rows.size());
  } else {
    for (std::size_t i = 0; i < n; ++i) out.rows.push_back(i);
  }

  if (intercept) out.names.emplace_back("(intercept)");
  for (const auto& f : feature_names) out.names.push_back(f);
  // Reference level is the first; it is absorbed by the intercept.
  const std::size_t first_dummy = intercept ? 1 : 0;
  for (std::size_t l = first_dummy; l < levels.size(); ++l) out.names.push_back("fe[" + levels[l] + "]");

  const auto rows = static_cast<Eigen::Index>(out.rows.size());
  out.x = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(out.names.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto src = static_cast<Eigen::Index>(out.rows[static_cast<std::size_t>(r)]);
    Eigen::Index c = 0;
    if (intercept) out.x(r, c++) = 1.0;
    for (Eigen::Index f = 0; f < features.cols(); ++f) out.x(r, c++) = features(src, f);
    if (fixed_effect) {
      const auto& g = (*fixed_effect)[static_cast<std::size_t>(src)];
      const auto pos = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), g) - levels.begin());
      if (pos >= first_dummy) out.x(r, c + static_cast<Eigen::Index>(pos - first_dummy)) = 1.0;
    }
  }
  if (intercept) {
    for (Eigen::Index f = 0; f < features.cols(); ++f) {
      const auto col = out.x.col(1 + f);
      if (rows > 0 && (col.array() == col(0)).all())
        throw ConfigError("feature '" + feature_names[static_cast<std::size_t>(f)] +
                          "' is constant; it is collinear with the intercept");
    }
  }
  return out;
}

double logistic_log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = x * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y(i) * eta(i) - log1pexp(eta(i));
  return ll;
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = x * beta;
  Eigen::VectorXd resid(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) resid(i) = y(i) - sigmoid(eta(i));
  return x.transpose() * resid;
}

RegressionResult logistic_regression(const Eigen::MatrixXd& features, const std::vector<std::string>& feature_names,
                                     const std::vector<int>& outcome,
                                     const std::optional<std::vector<std::string>>& fixed_effect,
                                     const LogisticOptions& options) {
  if (static_cast<std::size_t>(features.rows()) != outcome.size())
    throw DataError("outcome length differs from feature rows");
  for (int v : outcome)
    if (v != 0 && v != 1) throw DataError("logistic outcome must be 0 or 1");
  const auto design = build_design(features, feature_names, fixed_effect, options.intercept);
  const Eigen::MatrixXd& x = design.x;
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n == 0) throw InsufficientDataError("no observations for logistic regression");
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = outcome[design.rows[static_cast<std::size_t>(i)]];

  RegressionResult r;
  r.names = design.names;
  r.n_observations = static_cast<std::size_t>(n);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double ll = logistic_log_likelihood(x, y, beta);
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(p, p);

  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd w(n);
    Eigen::VectorXd resid(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mu = sigmoid(eta(i));
      w(i) = mu * (1.0 - mu);
      resid(i) = y(i) - mu;
    }
    const Eigen::VectorXd score = x.transpose() * resid;
    info = x.transpose() * w.asDiagonal() * x;
    r.n_iterations = it;
    if (score.cwiseAbs().maxCoeff() < options.tolerance) {
      r.converged = true;
      break;
    }
    if (it == options.max_iterations) break;
    if (beta.cwiseAbs().maxCoeff() > options.separation_bound) {
      r.separation = true;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      r.separation = true;
      break;
    }
    Eigen::VectorXd step = ldlt.solve(score);
    // Step halving keeps the likelihood from decreasing.
    double next_ll = logistic_log_likelihood(x, y, beta + step);
    for (int h = 0; h < 30 && !(next_ll >= ll - 1e-12 * std::abs(ll)); ++h) {
      step /= 2.0;
      next_ll = logistic_log_likelihood(x, y, beta + step);
    }
    beta += step;
    ll = next_ll;
  }
  if (!r.converged && beta.cwiseAbs().maxCoeff() > options.separation_bound) r.separation = true;
  if (r.separation) logger().warn("logistic regression: perfect separation suspected; result not converged");

  r.beta = beta;
  r.log_likelihood = logistic_log_likelihood(x, y, beta);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(p, p, std::numeric_limits<double>::quiet_NaN());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
  if (lu.isInvertible()) cov = lu.inverse();
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& name = r.names[static_cast<std::size_t>(j)];
    r.coefficients[name] = beta(j);
    r.odds_ratios[name] = std::exp(beta(j));
    r.std_errors[name] = std::sqrt(cov(j, j));
  }
  return r;
}

}  // namespace coshare::stats
