#include "coshare/corpus/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/corpus/url.hpp"

namespace coshare::corpus {
namespace {

std::optional<bool> parse_bool(std::string_view s) {
  const auto v = to_lower(trim(s));
  if (v == "true" || v == "1" || v == "yes" || v == "t") return true;
  if (v == "false" || v == "0" || v == "no" || v == "f" || v.empty()) return false;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(OutletKind kind) {
  switch (kind) {
    case OutletKind::fake: return "fake";
    case OutletKind::reliable: return "reliable";
    case OutletKind::unknown: break;
  }
  return "unknown";
}

std::string_view to_string(Lean lean) {
  switch (lean) {
    case Lean::liberal: return "liberal";
    case Lean::conservative: return "conservative";
    case Lean::unknown: break;
  }
  return "unknown";
}

DomainCatalog::DomainCatalog(std::vector<DomainCatalogEntry> entries, MainstreamCriteria criteria)
    : entries_(std::move(entries)), criteria_(criteria) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    e.domain = to_lower(trim(e.domain));
    if (e.is_fake == e.is_reliable) throw DataError("catalog: " + e.domain + " must be exactly one of fake/reliable");
    if (e.is_trustworthy && !e.is_reliable) throw DataError("catalog: trustworthy domain " + e.domain + " marked fake");
    if (!(e.partisanship >= -1.0 && e.partisanship <= 1.0)) {
      throw DataError("catalog: partisanship of " + e.domain + " outside [-1, 1]");
    }
    if (!index_.emplace(e.domain, i).second) throw DataError("catalog: duplicate domain " + e.domain);
  }

  const auto n = static_cast<double>(entries_.size());
  if (!entries_.empty()) {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.political_score;
    political_mean_ = sum / n;
    double ss = 0.0;
    for (const auto& e : entries_) ss += (e.political_score - political_mean_) * (e.political_score - political_mean_);
    political_sd_ = entries_.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    std::vector<double> lean;
    lean.reserve(entries_.size());
    for (const auto& e : entries_) lean.push_back(e.partisanship);
    std::sort(lean.begin(), lean.end());
    const auto mid = lean.size() / 2;
    partisanship_median_ = lean.size() % 2 == 1 ? lean[mid] : 0.5 * (lean[mid - 1] + lean[mid]);
  }
}

DomainCatalog DomainCatalog::load_csv(const std::filesystem::path& path, MainstreamCriteria criteria) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("catalog is empty: " + path.string());

  const std::vector<std::string_view> required = {"domain",        "is_fake",        "is_trustworthy",
                                                  "political_score", "pop_share_rank", "pop_visit_rank",
                                                  "partisanship"};
  std::map<std::string, std::size_t> column;
  const auto header = split(trim(line), ',');
  for (std::size_t i = 0; i < header.size(); ++i) column[to_lower(trim(header[i]))] = i;
  for (auto name : required) {
    if (!column.contains(std::string(name))) throw DataError("catalog: missing column " + std::string(name));
  }

  std::vector<DomainCatalogEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    const auto cell = [&](std::string_view name) -> std::string_view {
      const auto idx = column.at(std::string(name));
      return idx < cells.size() ? trim(cells[idx]) : std::string_view{};
    };
    const auto fail = [&](std::string_view what) {
      return DataError(path.string() + ":" + std::to_string(line_no) + ": " + std::string(what));
    };

    DomainCatalogEntry e;
    e.domain = std::string(cell("domain"));
    if (e.domain.empty()) throw fail("empty domain");
    const auto fake = parse_bool(cell("is_fake"));
    const auto trust = parse_bool(cell("is_trustworthy"));
    if (!fake || !trust) throw fail("bad boolean");
    e.is_fake = *fake;
    e.is_reliable = !*fake;
    e.is_trustworthy = *trust;
    const auto pol = parse_double(cell("political_score"));
    if (!pol) throw fail("bad political_score");
    e.political_score = *pol;
    if (const auto s = cell("pop_share_rank"); !s.empty()) {
      const auto v = parse_double(s);
      if (!v) throw fail("bad pop_share_rank");
      e.popularity_rank_share = *v;
    }
    if (const auto s = cell("pop_visit_rank"); !s.empty()) {
      const auto v = parse_int(s);
      if (!v) throw fail("bad pop_visit_rank");
      e.popularity_rank_visits = static_cast<int>(*v);
    }
    const auto part = parse_double(cell("partisanship"));
    if (!part) throw fail("bad partisanship");
    e.partisanship = *part;
    entries.push_back(std::move(e));
  }
  return DomainCatalog(std::move(entries), criteria);
}

const DomainCatalogEntry* DomainCatalog::find(std::string_view domain) const {
  const auto it = index_.find(domain);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

double DomainCatalog::political_z(std::string_view domain) const {
  const auto* e = find(domain);
  if (e == nullptr || political_sd_ <= 0.0) return 0.0;
  return (e->political_score - political_mean_) / political_sd_;
}

UrlClass DomainCatalog::classify_domain(std::string_view domain) const {
  UrlClass out;
  out.domain = std::string(domain);
  const auto* e = find(domain);
  if (e == nullptr) return out;
  out.lean = e->partisanship < partisanship_median_ ? Lean::liberal : Lean::conservative;
  if (e->is_fake) {
    out.kind = OutletKind::fake;
    return out;
  }
  out.kind = OutletKind::reliable;
  out.trustworthy = e->is_trustworthy;
  const bool political = political_z(domain) > criteria_.political_z;
  const bool shared = e->popularity_rank_share <= criteria_.share_top;
  const bool visited = e->popularity_rank_visits.has_value() && *e->popularity_rank_visits <= criteria_.visit_top;
  out.mainstream = political && shared && visited;
  return out;
}

UrlClass DomainCatalog::classify_url(std::string_view url) const { return classify_domain(url_domain(url)); }

}  // namespace coshare::corpus
