#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coshare::stats {

struct LogisticOptions {
  bool intercept = true;
  int max_iterations = 100;
  double tolerance = 1e-8;        // on max |score|
  double separation_bound = 30.0;  // |coefficient| beyond this flags separation
};

struct RegressionResult {
  std::vector<std::string> names;  // design column order
  Eigen::VectorXd beta;
  std::map<std::string, double> coefficients;
  std::map<std::string, double> odds_ratios;
  std::map<std::string, double> std_errors;
  double log_likelihood = 0.0;
  bool converged = false;
  bool separation = false;
  int n_iterations = 0;
  std::size_t n_observations = 0;
};

struct DesignMatrix {
  Eigen::MatrixXd x;
  std::vector<std::string> names;
  std::vector<std::size_t> rows;  // source row of each design row
};

/// Intercept + features + one-hot fixed effects (first level in sorted order
/// is the reference). Rows of singleton fixed-effect groups are dropped.
/// Throws ConfigError for a constant feature column next to an intercept.
DesignMatrix build_design(const Eigen::MatrixXd& features, const std::vector<std::string>& feature_names,
                          const std::optional<std::vector<std::string>>& fixed_effect, bool intercept);

/// Maximum-likelihood logistic fit by iteratively reweighted least squares.
RegressionResult logistic_regression(const Eigen::MatrixXd& features, const std::vector<std::string>& feature_names,
                                     const std::vector<int>& outcome,
                                     const std::optional<std::vector<std::string>>& fixed_effect = std::nullopt,
                                     const LogisticOptions& options = {});

double logistic_log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta);
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta);

}  // namespace coshare::stats
