#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coshare/corpus/config.hpp"

namespace coshare::corpus {

/// One sharing event.
struct ShareRecord {
  std::string user_id;
  std::string url;  // canonical
  std::int64_t shared_at = 0;  // epoch seconds, UTC
  std::optional<std::int64_t> followers;

  friend bool operator==(const ShareRecord&, const ShareRecord&) = default;
};

struct ShareLoadStats {
  std::size_t lines = 0;
  std::size_t kept = 0;
  std::size_t malformed = 0;
  std::size_t out_of_window = 0;
};

/// Streams shares.jsonl, canonicalizing URLs and applying the study window.
/// Malformed lines are counted and skipped (DataError in strict mode); an
/// unreadable file is always a DataError.
ShareLoadStats for_each_share_record(const std::filesystem::path& path, const CorpusConfig& cfg,
                                     const std::function<void(ShareRecord&&)>& sink);

struct ShareLoadResult {
  std::vector<ShareRecord> records;
  ShareLoadStats stats;
};

ShareLoadResult load_share_records(const std::filesystem::path& path, const CorpusConfig& cfg);

/// Parses one JSON line. Returns nullopt if the line is malformed.
std::optional<ShareRecord> parse_share_line(std::string_view line,
                                            const std::vector<std::string>& tracking_params);

struct SharerFilterResult {
  std::set<std::string> retained_urls;
  std::vector<ShareRecord> records;  // every event of a retained URL, input order
};

/// Keeps URLs shared by at least `min_sharers` distinct users.
SharerFilterResult filter_min_sharers(std::vector<ShareRecord> records, int min_sharers);

/// Number of distinct users per URL.
std::map<std::string, std::size_t> distinct_sharer_counts(const std::vector<ShareRecord>& records);

}  // namespace coshare::corpus
