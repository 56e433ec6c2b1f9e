#include "coshare/corpus/url.hpp"

#include <array>
#include <cctype>

#include "coshare/common/format.hpp"

namespace coshare::corpus {
namespace {

// Multi-label public suffixes seen in news-outlet catalogs. Every other host
// falls back to the single-label TLD rule.
constexpr std::array<std::string_view, 58> kMultiLabelSuffixes = {
    "co.uk",  "org.uk", "ac.uk",  "gov.uk", "me.uk",  "ltd.uk", "plc.uk", "net.uk", "sch.uk",
    "nhs.uk", "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au", "id.au",  "co.nz",
    "org.nz", "net.nz", "govt.nz", "ac.nz", "co.jp",  "ne.jp",  "or.jp",  "ac.jp",  "go.jp",
    "com.br", "org.br", "gov.br", "com.mx", "org.mx", "com.ar", "com.cn", "org.cn", "gov.cn",
    "com.hk", "org.hk", "com.sg", "org.sg", "com.tr", "org.tr", "co.in",  "org.in", "gov.in",
    "co.za",  "org.za", "co.il",  "org.il", "co.kr",  "or.kr",  "com.tw", "org.tw", "com.my",
    "com.pk", "com.ng", "com.ph", "co.ke"};

std::string_view strip_scheme(std::string_view s) {
  const auto scheme = s.find("://");
  const auto first_delim = s.find_first_of("/?#");
  if (scheme != std::string_view::npos && (first_delim == std::string_view::npos || scheme < first_delim)) {
    return s.substr(scheme + 3);
  }
  if (s.starts_with("//")) return s.substr(2);
  return s;
}

std::string clean_host(std::string_view authority) {
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  std::string host = to_lower(authority);
  if (host.ends_with(":80")) host.resize(host.size() - 3);
  if (host.ends_with(":443")) host.resize(host.size() - 4);
  while (!host.empty() && host.back() == '.') host.pop_back();
  return host;
}

bool is_tracking_param(std::string_view key, std::span<const std::string> tracking) {
  const std::string lowered = to_lower(key);
  for (const auto& pattern : tracking) {
    if (pattern.ends_with('*')) {
      if (lowered.starts_with(std::string_view(pattern).substr(0, pattern.size() - 1))) return true;
    } else if (lowered == pattern) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> default_tracking_params() { return {"utm_*", "fbclid", "gclid"}; }

std::string canonicalize_url(std::string_view url, std::span<const std::string> tracking_params) {
  std::string_view s = strip_scheme(trim(url));
  if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);

  const auto auth_end = s.find_first_of("/?");
  const std::string host = clean_host(s.substr(0, auth_end));
  std::string_view rest = auth_end == std::string_view::npos ? std::string_view{} : s.substr(auth_end);

  std::string_view path = rest;
  std::string_view query;
  if (const auto q = rest.find('?'); q != std::string_view::npos) {
    path = rest.substr(0, q);
    query = rest.substr(q + 1);
  }
  while (!path.empty() && path.back() == '/') path.remove_suffix(1);

  std::string kept;
  if (!query.empty()) {
    for (auto param : split(query, '&')) {
      if (param.empty()) continue;
      const auto key = param.substr(0, param.find('='));
      if (is_tracking_param(key, tracking_params)) continue;
      if (!kept.empty()) kept.push_back('&');
      kept.append(param);
    }
  }

  std::string out = host;
  out.append(path);
  if (!kept.empty()) {
    out.push_back('?');
    out.append(kept);
  }
  return out;
}

std::string url_host(std::string_view url) {
  std::string_view s = strip_scheme(trim(url));
  return clean_host(s.substr(0, s.find_first_of("/?#")));
}

std::string registered_domain(std::string_view host) {
  std::string h = to_lower(host);
  if (const auto colon = h.find(':'); colon != std::string::npos) h.resize(colon);
  const auto last_dot = h.rfind('.');
  if (last_dot == std::string::npos) return h;
  // IPv4 literals have no registrable part.
  if (std::isdigit(static_cast<unsigned char>(h.back()))) return h;

  std::size_t suffix_labels = 1;
  for (auto suffix : kMultiLabelSuffixes) {
    if (h.size() > suffix.size() && h.ends_with(suffix) && h[h.size() - suffix.size() - 1] == '.') {
      suffix_labels = 2;
      break;
    }
  }
  // Walk back suffix_labels + 1 labels.
  std::size_t pos = h.size();
  for (std::size_t labels = 0; labels < suffix_labels + 1; ++labels) {
    if (pos == 0) return h;
    const auto dot = h.rfind('.', pos - 1);
    if (dot == std::string::npos) return h;
    pos = dot;
  }
  return h.substr(pos + 1);
}

}  // namespace coshare::corpus
