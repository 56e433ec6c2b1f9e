#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coshare::corpus {

/// utm_*, fbclid, gclid. Entries ending in '*' match by prefix.
std::vector<std::string> default_tracking_params();

/// Canonical URL identity: scheme, userinfo, default port and fragment
/// dropped; host lowercased; tracking query parameters removed (remaining
/// parameters keep their order); trailing slash stripped.
///
///   "https://Example.com/a?utm_source=x#frag" -> "example.com/a"
///
/// Idempotent: canonicalize_url(canonicalize_url(u)) == canonicalize_url(u).
std::string canonicalize_url(std::string_view url, std::span<const std::string> tracking_params);

/// Host part of a canonical (or raw) URL, lowercased, without port.
std::string url_host(std::string_view url);

/// Registered domain of a host using the bundled public-suffix snapshot,
/// e.g. "www.bbc.co.uk" -> "bbc.co.uk", "edition.cnn.com" -> "cnn.com".
std::string registered_domain(std::string_view host);

inline std::string url_domain(std::string_view url) { return registered_domain(url_host(url)); }

}  // namespace coshare::corpus
