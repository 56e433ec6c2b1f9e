#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coshare::corpus {

struct DomainCatalogEntry {
  std::string domain;
  bool is_fake = false;
  bool is_reliable = true;
  bool is_trustworthy = false;
  double political_score = 0.0;
  double popularity_rank_share = 1.0;  // percentile rank, smaller = more popular
  std::optional<int> popularity_rank_visits;
  double partisanship = 0.0;  // [-1, 1], negative = liberal
};

enum class OutletKind { fake, reliable, unknown };
enum class Lean { liberal, conservative, unknown };

std::string_view to_string(OutletKind kind);
std::string_view to_string(Lean lean);

struct UrlClass {
  OutletKind kind = OutletKind::unknown;
  bool mainstream = false;
  bool trustworthy = false;
  Lean lean = Lean::unknown;
  std::string domain;
};

/// Thresholds that make a reliable outlet "mainstream": political-score
/// z-score above `political_z`, share-popularity percentile within
/// `share_top`, and a visit rank within `visit_top`.
struct MainstreamCriteria {
  double political_z = 1.0;
  double share_top = 0.10;
  int visit_top = 500;
};

class DomainCatalog {
 public:
  DomainCatalog() = default;
  /// Validates the partition invariants; throws DataError on violation.
  explicit DomainCatalog(std::vector<DomainCatalogEntry> entries, MainstreamCriteria criteria = {});

  /// Reads catalog.csv (header: domain,is_fake,is_trustworthy,political_score,
  /// pop_share_rank,pop_visit_rank,partisanship).
  static DomainCatalog load_csv(const std::filesystem::path& path, MainstreamCriteria criteria = {});

  [[nodiscard]] const DomainCatalogEntry* find(std::string_view domain) const;
  [[nodiscard]] UrlClass classify_domain(std::string_view domain) const;
  [[nodiscard]] UrlClass classify_url(std::string_view url) const;

  /// z-score of the domain's political score over all catalog domains
  /// (sample standard deviation).
  [[nodiscard]] double political_z(std::string_view domain) const;
  [[nodiscard]] double partisanship_median() const { return partisanship_median_; }
  [[nodiscard]] const std::vector<DomainCatalogEntry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

 private:
  std::vector<DomainCatalogEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
  MainstreamCriteria criteria_;
  double political_mean_ = 0.0;
  double political_sd_ = 0.0;
  double partisanship_median_ = 0.0;
};

}  // namespace coshare::corpus
