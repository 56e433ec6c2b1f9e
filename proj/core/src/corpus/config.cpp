#include "coshare/corpus/config.hpp"

#include <cctype>
#include <cstdio>

#include "coshare/common/error.hpp"

namespace coshare::corpus {
namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{to_int(y)},
                                        std::chrono::month{static_cast<unsigned>(to_int(m))},
                                        std::chrono::day{static_cast<unsigned>(to_int(d))}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  const auto date = parse_date(text.substr(0, 10));
  const auto hh = text.substr(11, 2), mm = text.substr(14, 2), ss = text.substr(17, 2);
  if (!date || !all_digits(hh) || !all_digits(mm) || !all_digits(ss)) return std::nullopt;
  const int h = to_int(hh), m = to_int(mm), s = to_int(ss);
  if (h > 23 || m > 59 || s > 60) return std::nullopt;
  const auto days = date->time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + m * 60 + s;
}

std::set<std::string> default_false_labels() {
  return {"false", "not true", "pants on fire", "pants on fire!", "pants-on-fire",
          "four pinocchios", "incorrect", "fake", "fabricated", "wrong"};
}

void CorpusConfig::validate() const {
  if (date_start >= date_end) throw ConfigError("date_start must precede date_end");
  if (min_sharers < 1) throw ConfigError("min_sharers must be >= 1");
}

std::int64_t CorpusConfig::window_begin() const {
  return static_cast<std::int64_t>(date_start.time_since_epoch().count()) * 86400;
}

std::int64_t CorpusConfig::window_end() const {
  return static_cast<std::int64_t>(date_end.time_since_epoch().count()) * 86400 + 86399;
}

}  // namespace coshare::corpus
