#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace coshare::corpus {

struct ClaimDoc {
  std::string claim_id;
  std::string text;
  std::string verdict;
};

struct ClaimLoadStats {
  std::size_t lines = 0;
  std::size_t kept = 0;
  std::size_t malformed = 0;
  std::size_t not_false = 0;
  std::size_t duplicates = 0;
};

/// True if the verdict (trimmed, case-insensitive) is in the false-label set.
bool is_false_verdict(std::string_view verdict, const std::set<std::string>& false_labels);

/// Loads claims.jsonl keeping false-verdict claims with unique texts.
std::vector<ClaimDoc> load_claims(const std::filesystem::path& path,
                                  const std::set<std::string>& false_labels, bool strict = false,
                                  ClaimLoadStats* stats = nullptr);

}  // namespace coshare::corpus
