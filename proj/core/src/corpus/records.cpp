#include "coshare/corpus/records.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_map>
#include <unordered_set>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/corpus/url.hpp"

namespace coshare::corpus {

std::optional<ShareRecord> parse_share_line(std::string_view line,
                                            const std::vector<std::string>& tracking_params) {
  const auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;

  ShareRecord rec;
  const auto user = doc.find("user_id");
  if (user == doc.end()) return std::nullopt;
  if (user->is_string()) {
    rec.user_id = user->get<std::string>();
  } else if (user->is_number_integer()) {
    rec.user_id = std::to_string(user->get<std::int64_t>());
  } else {
    return std::nullopt;
  }

  const auto url = doc.find("url");
  if (url == doc.end() || !url->is_string()) return std::nullopt;
  rec.url = canonicalize_url(url->get<std::string>(), tracking_params);

  const auto at = doc.find("shared_at");
  if (at == doc.end() || !at->is_string()) return std::nullopt;
  const auto ts = parse_timestamp(at->get<std::string>());
  if (!ts) return std::nullopt;
  rec.shared_at = *ts;

  if (const auto f = doc.find("followers"); f != doc.end() && f->is_number_integer()) {
    rec.followers = f->get<std::int64_t>();
  }
  if (rec.user_id.empty() || rec.url.empty()) return std::nullopt;
  return rec;
}

ShareLoadStats for_each_share_record(const std::filesystem::path& path, const CorpusConfig& cfg,
                                     const std::function<void(ShareRecord&&)>& sink) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open share records: " + path.string());

  ShareLoadStats stats;
  const auto begin = cfg.window_begin();
  const auto end = cfg.window_end();
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (trim(line).empty()) continue;
    auto rec = parse_share_line(line, cfg.tracking_params);
    if (!rec) {
      if (cfg.strict) {
        throw DataError(path.string() + ":" + std::to_string(stats.lines) + ": malformed share record");
      }
      ++stats.malformed;
      continue;
    }
    if (rec->shared_at < begin || rec->shared_at > end) {
      ++stats.out_of_window;
      continue;
    }
    ++stats.kept;
    sink(std::move(*rec));
  }
  return stats;
}

ShareLoadResult load_share_records(const std::filesystem::path& path, const CorpusConfig& cfg) {
  ShareLoadResult out;
  out.stats = for_each_share_record(path, cfg, [&](ShareRecord&& r) { out.records.push_back(std::move(r)); });
  return out;
}

std::map<std::string, std::size_t> distinct_sharer_counts(const std::vector<ShareRecord>& records) {
  std::unordered_map<std::string_view, std::unordered_set<std::string_view>> users;
  for (const auto& r : records) users[r.url].insert(r.user_id);
  std::map<std::string, std::size_t> out;
  for (const auto& [url, set] : users) out.emplace(std::string(url), set.size());
  return out;
}

SharerFilterResult filter_min_sharers(std::vector<ShareRecord> records, int min_sharers) {
  SharerFilterResult out;
  const auto counts = distinct_sharer_counts(records);
  for (const auto& [url, n] : counts) {
    if (n >= static_cast<std::size_t>(std::max(min_sharers, 1))) out.retained_urls.insert(url);
  }
  out.records.reserve(records.size());
  for (auto& r : records) {
    if (out.retained_urls.contains(r.url)) out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace coshare::corpus
