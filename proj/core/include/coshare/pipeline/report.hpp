#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "coshare/library/library.hpp"
#include "coshare/stats/tests.hpp"

namespace coshare::pipeline {

/// One row of test_report.json: a library at one dimensionality tested
/// within one outlet class.
struct TestRow {
  std::string outlet_class;
  std::string library;
  std::string dimensionality;
  std::string status;  // "ok" or "insufficient data"
  std::size_t n_labels = 0;
  std::size_t n_coshared_articles = 0;
  std::size_t n_control_articles = 0;
  std::size_t n_effective = 0;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::optional<double> effect_size;
  std::optional<double> estimate;
  std::optional<std::pair<double, double>> ci;
  std::string method;
  std::string alternative;
  std::string zero_policy;
  std::string reason;  // empty when status is "ok"
};

inline constexpr std::string_view kInsufficientData = "insufficient data";

/// Paired signed-rank test of the library's label shares in the co-shared
/// collection against the control collection. Each article contributes a
/// label at most once. Empty groups, an empty library or all-zero
/// differences give an "insufficient data" row with no statistics.
TestRow paired_library_test(const library::NarrativeLibrary& lib, std::span<const library::ArticleLabels> articles,
                            const std::string& outlet_class, stats::Alternative alternative,
                            stats::ZeroPolicy zero_policy);

}  // namespace coshare::pipeline
