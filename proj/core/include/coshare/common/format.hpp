#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coshare {

/// Shortest representation that round-trips exactly; used for every real
/// number written to disk so reruns are byte-identical.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);

/// Replaces tabs, CR and LF with spaces so the value fits in one TSV cell.
std::string tsv_field(std::string_view text);

bool starts_with_icase(std::string_view text, std::string_view prefix);

}  // namespace coshare
