#include "coshare/corpus/articles.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/corpus/quotes.hpp"
#include "coshare/corpus/url.hpp"

namespace coshare::corpus {
namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_';
}

// Case-insensitive removal of `needle` where it is not glued to other word
// characters.
std::string remove_token_icase(std::string_view text, std::string_view needle) {
  if (needle.empty()) return std::string(text);
  const std::string lower_text = to_lower(text);
  const std::string lower_needle = to_lower(needle);
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  std::size_t pos = lower_text.find(lower_needle);
  while (pos != std::string::npos) {
    const std::size_t end = pos + lower_needle.size();
    const bool left_ok = pos == 0 || (!is_word_char(text[pos - 1]) && text[pos - 1] != '.');
    const bool right_ok = end >= text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) {
      out.append(text.substr(cursor, pos - cursor));
      cursor = end;
    }
    pos = lower_text.find(lower_needle, pos + 1);
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace

bool ArticleStore::add(ArticleDoc doc) {
  if (index_.contains(doc.url)) return false;
  index_.emplace(doc.url, docs_.size());
  docs_.push_back(std::move(doc));
  return true;
}

const ArticleDoc* ArticleStore::find(std::string_view url) const {
  const auto it = index_.find(url);
  return it == index_.end() ? nullptr : &docs_[it->second];
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string remove_domain_mentions(std::string_view text, std::string_view domain) {
  if (domain.empty()) return std::string(text);
  std::string out = remove_token_icase(text, "www." + std::string(domain));
  out = remove_token_icase(out, domain);
  return normalize_whitespace(out);
}

std::string remove_headline(std::string_view body, std::string_view headline) {
  if (headline.empty()) return std::string(body);
  std::string out;
  std::size_t cursor = 0;
  std::size_t pos = body.find(headline);
  while (pos != std::string_view::npos) {
    out.append(body.substr(cursor, pos - cursor));
    cursor = pos + headline.size();
    pos = body.find(headline, cursor);
  }
  out.append(body.substr(cursor));
  return normalize_whitespace(out);
}

ArticleStore build_article_store(std::vector<ArticleDoc> raw, const DomainCatalog& catalog,
                                 const ArticleOptions& options, ArticleLoadStats* stats) {
  ArticleLoadStats local;
  ArticleLoadStats& st = stats != nullptr ? *stats : local;
  ArticleStore store;
  std::unordered_set<std::string> seen_units;

  for (auto& doc : raw) {
    doc.url = canonicalize_url(doc.url, options.tracking_params);
    if (doc.url.empty()) {
      ++st.malformed;
      continue;
    }
    if (doc.domain.empty()) {
      doc.domain = url_domain(doc.url);
    } else {
      doc.domain = registered_domain(doc.domain);
    }

    std::string headline = normalize_whitespace(doc.headline);
    std::string body = normalize_whitespace(doc.body);
    if (options.quote_strip && catalog.classify_domain(doc.domain).kind == OutletKind::reliable) {
      headline = strip_direct_quotes(headline);
      body = strip_direct_quotes(body);
    }
    headline = remove_domain_mentions(headline, doc.domain);
    body = remove_domain_mentions(body, doc.domain);
    body = remove_headline(body, headline);

    if (!headline.empty() && !seen_units.insert(headline).second) {
      ++st.duplicate_units;
      headline.clear();
    }
    if (!body.empty() && !seen_units.insert(body).second) {
      ++st.duplicate_units;
      body.clear();
    }
    if (headline.empty() && body.empty()) {
      ++st.skipped_empty;
      continue;
    }
    doc.headline = std::move(headline);
    doc.body = std::move(body);
    if (store.add(std::move(doc))) ++st.loaded;
  }
  return store;
}

ArticleStore load_articles(const std::filesystem::path& path, const DomainCatalog& catalog,
                           const ArticleOptions& options, ArticleLoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open articles: " + path.string());
  ArticleLoadStats local;
  ArticleLoadStats& st = stats != nullptr ? *stats : local;

  std::vector<ArticleDoc> raw;
  std::string line;
  while (std::getline(in, line)) {
    ++st.lines;
    if (trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    const bool ok = !j.is_discarded() && j.is_object() && j.contains("url") && j["url"].is_string() &&
                    j.value("headline", nlohmann::json()).is_string() && j.value("body", nlohmann::json()).is_string();
    if (!ok) {
      if (options.strict) throw DataError(path.string() + ":" + std::to_string(st.lines) + ": malformed article");
      ++st.malformed;
      continue;
    }
    ArticleDoc doc;
    doc.url = j["url"].get<std::string>();
    if (j.contains("domain") && j["domain"].is_string()) doc.domain = j["domain"].get<std::string>();
    doc.headline = j["headline"].get<std::string>();
    doc.body = j["body"].get<std::string>();
    if (j.contains("published_at") && j["published_at"].is_string()) {
      doc.published_at = j["published_at"].get<std::string>();
    }
    raw.push_back(std::move(doc));
  }
  return build_article_store(std::move(raw), catalog, options, &st);
}

}  // namespace coshare::corpus
