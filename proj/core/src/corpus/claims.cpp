#include "coshare/corpus/claims.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/corpus/articles.hpp"

namespace coshare::corpus {

bool is_false_verdict(std::string_view verdict, const std::set<std::string>& false_labels) {
  const auto v = to_lower(trim(verdict));
  for (const auto& label : false_labels) {
    if (to_lower(trim(label)) == v) return true;
  }
  return false;
}

std::vector<ClaimDoc> load_claims(const std::filesystem::path& path, const std::set<std::string>& false_labels,
                                  bool strict, ClaimLoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open claims: " + path.string());
  ClaimLoadStats local;
  ClaimLoadStats& st = stats != nullptr ? *stats : local;

  std::vector<ClaimDoc> out;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++st.lines;
    if (trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    const bool ok = !j.is_discarded() && j.is_object() && j.contains("claim_id") && j.contains("text") &&
                    j.contains("verdict") && j["text"].is_string() && j["verdict"].is_string() &&
                    (j["claim_id"].is_string() || j["claim_id"].is_number_integer());
    if (!ok) {
      if (strict) throw DataError(path.string() + ":" + std::to_string(st.lines) + ": malformed claim");
      ++st.malformed;
      continue;
    }
    ClaimDoc claim;
    claim.claim_id = j["claim_id"].is_string() ? j["claim_id"].get<std::string>()
                                               : std::to_string(j["claim_id"].get<std::int64_t>());
    claim.text = normalize_whitespace(j["text"].get<std::string>());
    claim.verdict = j["verdict"].get<std::string>();
    if (!is_false_verdict(claim.verdict, false_labels)) {
      ++st.not_false;
      continue;
    }
    if (claim.text.empty() || !seen.insert(claim.text).second) {
      ++st.duplicates;
      continue;
    }
    ++st.kept;
    out.push_back(std::move(claim));
  }
  return out;
}

}  // namespace coshare::corpus
