#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/url.hpp"

namespace coshare::corpus {

struct ArticleDoc {
  std::string url;  // canonical
  std::string domain;
  std::string headline;
  std::string body;
  std::optional<std::string> published_at;
};

struct ArticleLoadStats {
  std::size_t lines = 0;
  std::size_t loaded = 0;
  std::size_t malformed = 0;
  std::size_t skipped_empty = 0;
  std::size_t duplicate_units = 0;
};

struct ArticleOptions {
  std::vector<std::string> tracking_params = default_tracking_params();
  /// Strip direct quotations from reliable-outlet articles.
  bool quote_strip = false;
  bool strict = false;
};

/// Canonical article texts keyed by URL. Built once, then read-only.
class ArticleStore {
 public:
  /// Adds a document; returns false if the URL is already present.
  bool add(ArticleDoc doc);
  [[nodiscard]] const ArticleDoc* find(std::string_view url) const;
  [[nodiscard]] const std::vector<ArticleDoc>& docs() const { return docs_; }
  [[nodiscard]] std::size_t size() const { return docs_.size(); }

 private:
  std::vector<ArticleDoc> docs_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Collapses whitespace runs to a single space and trims.
std::string normalize_whitespace(std::string_view text);

/// Removes mentions of the outlet's domain ("nytimes.com", "www.nytimes.com").
std::string remove_domain_mentions(std::string_view text, std::string_view domain);

/// Removes every occurrence of the headline from the body.
std::string remove_headline(std::string_view body, std::string_view headline);

/// Loads articles.jsonl. Headline and body are separate text units; units
/// whose normalized text was already seen anywhere in the corpus are blanked,
/// and articles left with neither unit are skipped.
ArticleStore load_articles(const std::filesystem::path& path, const DomainCatalog& catalog,
                           const ArticleOptions& options, ArticleLoadStats* stats = nullptr);

/// Same processing over in-memory documents, in order.
ArticleStore build_article_store(std::vector<ArticleDoc> raw, const DomainCatalog& catalog,
                                 const ArticleOptions& options, ArticleLoadStats* stats = nullptr);

}  // namespace coshare::corpus
