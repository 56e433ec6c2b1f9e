#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/narrative/assemble.hpp"

namespace coshare::library {

using narrative::Dimensionality;

enum class LibraryName { all_fake, recurring_fake, false_claims };
std::string_view to_string(LibraryName n);
std::optional<LibraryName> parse_library_name(std::string_view s);

/// Tie handling at the recurring cutoff.
enum class RecurringMode { tie_inclusive, strict };

struct NarrativeLibrary {
  LibraryName name = LibraryName::all_fake;
  Dimensionality dimensionality = Dimensionality::low;
  std::map<std::string, std::size_t> entries;  // label -> number of source texts containing it

  [[nodiscard]] std::size_t size() const { return entries.size(); }
  [[nodiscard]] bool contains(const std::string& label) const { return entries.contains(label); }
};

/// Per-text label lists at one dimensionality (duplicates within a text
/// count once).
using TextLabels = std::vector<std::vector<std::string>>;

/// Every label with the number of texts containing it. Throws DataError when
/// there are no texts.
NarrativeLibrary build_library(const TextLabels& texts, LibraryName name, Dimensionality dimensionality);

/// Labels with frequency >= the type-7 (1 - top) quantile of the frequency
/// distribution. Strict mode then keeps at most max(1, floor(top * M))
/// labels, ordered by frequency (descending) then label.
NarrativeLibrary recurring_subset(const NarrativeLibrary& all, double top = 0.01,
                                  RecurringMode mode = RecurringMode::tie_inclusive);

struct Presence {
  std::size_t count = 0;
  double ratio = 0.0;  // count / |labels|, 0 for an empty label set
};

Presence count_presence(const std::set<std::string>& article_labels, const std::set<std::string>& library);
Presence count_presence(const std::set<std::string>& article_labels, const NarrativeLibrary& library);

std::set<std::string> label_set(const NarrativeLibrary& library);

/// Article membership for presence summaries.
enum class ArticleGroup { coshared, control };
std::string_view to_string(ArticleGroup g);

struct ArticleLabels {
  std::string url;
  ArticleGroup group = ArticleGroup::coshared;
  std::set<std::string> low;
  std::set<std::string> high;
};

struct PresenceRow {
  std::string url;
  ArticleGroup group = ArticleGroup::coshared;
  std::string library;  // "<name>:<dim>" or "union"
  std::size_t count = 0;
  std::size_t n_labels = 0;
  double ratio = 0.0;  // fraction in [0, 1]
};

struct PresenceSummary {
  ArticleGroup group = ArticleGroup::coshared;
  std::string library;
  std::size_t n_articles = 0;
  double mean_count = 0.0;
  double sd_count = 0.0;
  double mean_ratio = 0.0;  // percent
  double sd_ratio = 0.0;    // percent
};

struct GroupPresence {
  std::vector<PresenceRow> rows;
  std::vector<PresenceSummary> summaries;  // per library, then "union"; coshared before control
};

/// Name of the headline library: recurring_fake and false_claims of both
/// dimensionalities merged, matched against each article's labels of both
/// dimensionalities.
inline constexpr std::string_view kUnionLibrary = "union";

/// Per-article counts for every library plus the union, aggregated to mean
/// and sd per group (population sd unless `sample_sd`).
GroupPresence summarize_group_presence(std::span<const ArticleLabels> articles,
                                       std::span<const NarrativeLibrary> libraries, bool sample_sd = false);

/// Mean and sd of a sample (population sd unless `sample_sd`).
std::pair<double, double> mean_sd(std::span<const double> values, bool sample_sd);

struct SearchHit {
  std::string label;
  std::size_t frequency = 0;
  std::vector<std::string> examples;
};

/// Example source sentences per label.
using EvidenceIndex = std::map<std::string, std::vector<std::string>>;

/// Labels containing every include term and no exclude term, where a term
/// matches when it is a substring of one of the label's tokens. An empty
/// include list is rejected.
std::vector<SearchHit> search_narratives(const NarrativeLibrary& library, std::span<const std::string> include,
                                         std::span<const std::string> exclude, const EvidenceIndex& evidence = {},
                                         std::size_t max_examples = 3);

void write_libraries_tsv(const std::filesystem::path& path, std::span<const NarrativeLibrary> libraries);
std::vector<NarrativeLibrary> read_libraries_tsv(const std::filesystem::path& path);

void write_presence_tsv(const std::filesystem::path& path, std::span<const PresenceRow> rows);

void write_search_tsv(const std::filesystem::path& path, std::span<const SearchHit> hits);

}  // namespace coshare::library
