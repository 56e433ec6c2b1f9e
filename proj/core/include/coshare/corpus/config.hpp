#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/corpus/url.hpp"

namespace coshare::corpus {

using Date = std::chrono::sys_days;

/// Parses "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

/// Parses "YYYY-MM-DDTHH:MM:SSZ" into seconds since the Unix epoch.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

/// Verdict strings accepted as "false" (compared case-insensitively).
std::set<std::string> default_false_labels();

struct CorpusConfig {
  Date date_start = std::chrono::year{2018} / std::chrono::May / 1;
  Date date_end = std::chrono::year{2021} / std::chrono::November / 14;
  int min_sharers = 20;
  std::set<std::string> false_label_set = default_false_labels();
  bool quote_strip = false;
  std::vector<std::string> tracking_params = default_tracking_params();
  /// Malformed input lines are fatal instead of counted.
  bool strict = false;

  /// Throws ConfigError on date_start >= date_end or min_sharers < 1.
  void validate() const;

  /// Inclusive window [date_start 00:00:00, date_end 23:59:59] in epoch seconds.
  [[nodiscard]] std::int64_t window_begin() const;
  [[nodiscard]] std::int64_t window_end() const;
};

}  // namespace coshare::corpus
