#include "coshare/library/library.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"

namespace coshare::library {

std::string_view to_string(LibraryName n) {
  switch (n) {
    case LibraryName::all_fake: return "all_fake";
    case LibraryName::recurring_fake: return "recurring_fake";
    case LibraryName::false_claims: return "false_claims";
  }
  return "all_fake";
}

std::optional<LibraryName> parse_library_name(std::string_view s) {
  if (s == "all_fake") return LibraryName::all_fake;
  if (s == "recurring_fake") return LibraryName::recurring_fake;
  if (s == "false_claims") return LibraryName::false_claims;
  return std::nullopt;
}

std::string_view to_string(ArticleGroup g) { return g == ArticleGroup::coshared ? "coshared" : "control"; }

NarrativeLibrary build_library(const TextLabels& texts, LibraryName name, Dimensionality dimensionality) {
  if (texts.empty())
    throw DataError("cannot build library " + std::string(to_string(name)) + ": source class has no texts");
  NarrativeLibrary lib;
  lib.name = name;
  lib.dimensionality = dimensionality;
  std::vector<std::string> unique;
  for (const auto& labels : texts) {
    unique.assign(labels.begin(), labels.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& l : unique) ++lib.entries[l];
  }
  return lib;
}

NarrativeLibrary recurring_subset(const NarrativeLibrary& all, double top, RecurringMode mode) {
  if (!(top > 0.0 && top < 1.0)) throw ConfigError("recurring_top must be in (0, 1)");
  NarrativeLibrary out;
  out.name = LibraryName::recurring_fake;
  out.dimensionality = all.dimensionality;
  if (all.entries.empty()) return out;

  std::vector<double> freq;
  freq.reserve(all.size());
  for (const auto& [label, f] : all.entries) freq.push_back(static_cast<double>(f));
  std::sort(freq.begin(), freq.end());
  const double h = static_cast<double>(freq.size() - 1) * (1.0 - top);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, freq.size() - 1);
  const double cutoff = freq[lo] + (h - static_cast<double>(lo)) * (freq[hi] - freq[lo]);

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [label, f] : all.entries)
    if (static_cast<double>(f) >= cutoff) kept.emplace_back(label, f);
  if (mode == RecurringMode::strict) {
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(top * static_cast<double>(all.size()) + 1e-9)));
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (kept.size() > k) kept.resize(k);
  }
  for (auto& [label, f] : kept) out.entries.emplace(std::move(label), f);
  return out;
}

Presence count_presence(const std::set<std::string>& article_labels, const std::set<std::string>& library) {
  Presence p;
  for (const auto& l : article_labels) p.count += library.contains(l) ? 1 : 0;
  p.ratio = article_labels.empty() ? 0.0
                                   : static_cast<double>(p.count) / static_cast<double>(article_labels.size());
  return p;
}

Presence count_presence(const std::set<std::string>& article_labels, const NarrativeLibrary& library) {
  Presence p;
  for (const auto& l : article_labels) p.count += library.contains(l) ? 1 : 0;
  p.ratio = article_labels.empty() ? 0.0
                                   : static_cast<double>(p.count) / static_cast<double>(article_labels.size());
  return p;
}

std::set<std::string> label_set(const NarrativeLibrary& library) {
  std::set<std::string> out;
  for (const auto& [label, f] : library.entries) out.insert(label);
  return out;
}

std::pair<double, double> mean_sd(std::span<const double> values, bool sample_sd) {
  if (values.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const std::size_t denom = sample_sd ? values.size() - 1 : values.size();
  const double sd = denom == 0 ? 0.0 : std::sqrt(ss / static_cast<double>(denom));
  return {mean, sd};
}

GroupPresence summarize_group_presence(std::span<const ArticleLabels> articles,
                                       std::span<const NarrativeLibrary> libraries, bool sample_sd) {
  GroupPresence out;
  std::vector<std::string> names;
  for (const auto& lib : libraries)
    names.push_back(std::string(to_string(lib.name)) + ":" + narrative::to_string(lib.dimensionality));

  std::set<std::string> union_labels;
  for (const auto& lib : libraries)
    if (lib.name == LibraryName::recurring_fake || lib.name == LibraryName::false_claims)
      for (const auto& [label, f] : lib.entries) union_labels.insert(label);

  for (const auto& a : articles) {
    for (std::size_t i = 0; i < libraries.size(); ++i) {
      const auto& labels = libraries[i].dimensionality == Dimensionality::low ? a.low : a.high;
      const auto p = count_presence(labels, libraries[i]);
      out.rows.push_back({a.url, a.group, names[i], p.count, labels.size(), p.ratio});
    }
    std::set<std::string> both = a.low;
    both.insert(a.high.begin(), a.high.end());
    const auto p = count_presence(both, union_labels);
    out.rows.push_back({a.url, a.group, std::string(kUnionLibrary), p.count, both.size(), p.ratio});
  }

  names.emplace_back(kUnionLibrary);
  for (const auto& name : names) {
    for (ArticleGroup g : {ArticleGroup::coshared, ArticleGroup::control}) {
      std::vector<double> counts;
      std::vector<double> ratios;
      for (const auto& r : out.rows) {
        if (r.group != g || r.library != name) continue;
        counts.push_back(static_cast<double>(r.count));
        ratios.push_back(100.0 * r.ratio);
      }
      PresenceSummary s;
      s.group = g;
      s.library = name;
      s.n_articles = counts.size();
      std::tie(s.mean_count, s.sd_count) = mean_sd(counts, sample_sd);
      std::tie(s.mean_ratio, s.sd_ratio) = mean_sd(ratios, sample_sd);
      out.summaries.push_back(s);
    }
  }
  return out;
}

namespace {

bool term_in_label(std::string_view label, std::string_view term) {
  for (auto token : split(label, ' '))
    if (token.find(term) != std::string_view::npos) return true;
  return false;
}

}  // namespace

std::vector<SearchHit> search_narratives(const NarrativeLibrary& library, std::span<const std::string> include,
                                         std::span<const std::string> exclude, const EvidenceIndex& evidence,
                                         std::size_t max_examples) {
  std::vector<std::string> inc;
  for (const auto& t : include)
    if (!trim(t).empty()) inc.push_back(to_lower(trim(t)));
  if (inc.empty()) throw ConfigError("narrative search needs at least one include term");
  std::vector<SearchHit> out;
  for (const auto& [label, f] : library.entries) {
    const bool all = std::all_of(inc.begin(), inc.end(), [&](const auto& t) { return term_in_label(label, t); });
    if (!all) continue;
    const bool excluded = std::any_of(exclude.begin(), exclude.end(), [&](const auto& t) {
      return !trim(t).empty() && term_in_label(label, to_lower(trim(t)));
    });
    if (excluded) continue;
    SearchHit hit;
    hit.label = label;
    hit.frequency = f;
    if (auto it = evidence.find(label); it != evidence.end()) {
      const auto n = std::min(max_examples, it->second.size());
      hit.examples.assign(it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n));
    }
    out.push_back(std::move(hit));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.frequency > b.frequency; });
  return out;
}

void write_libraries_tsv(const std::filesystem::path& path, std::span<const NarrativeLibrary> libraries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "name\tdimensionality\tlabel\tfrequency\n";
  for (const auto& lib : libraries)
    for (const auto& [label, f] : lib.entries)
      out << to_string(lib.name) << '\t' << narrative::to_string(lib.dimensionality) << '\t' << tsv_field(label)
          << '\t' << f << '\n';
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<NarrativeLibrary> read_libraries_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<NarrativeLibrary> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, '\t');
    const auto name = f.size() == 4 ? parse_library_name(f[0]) : std::nullopt;
    const auto freq = f.size() == 4 ? parse_int(f[3]) : std::nullopt;
    if (!name || !freq || *freq < 1 || (f[1] != "low" && f[1] != "high"))
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed library row");
    const auto dim = narrative::parse_dimensionality(f[1]);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& l) { return l.name == *name && l.dimensionality == dim; });
    if (it == out.end()) {
      out.push_back(NarrativeLibrary{*name, dim, {}});
      it = std::prev(out.end());
    }
    it->entries[std::string(f[2])] = static_cast<std::size_t>(*freq);
  }
  return out;
}

void write_presence_tsv(const std::filesystem::path& path, std::span<const PresenceRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "url\tgroup\tlibrary\tcount\tn_labels\tratio\n";
  for (const auto& r : rows)
    out << tsv_field(r.url) << '\t' << to_string(r.group) << '\t' << r.library << '\t' << r.count << '\t'
        << r.n_labels << '\t' << format_double(r.ratio) << '\n';
  if (!out) throw DataError("failed writing " + path.string());
}

void write_search_tsv(const std::filesystem::path& path, std::span<const SearchHit> hits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "label\tfrequency\tsentences\n";
  for (const auto& h : hits) {
    out << tsv_field(h.label) << '\t' << h.frequency << '\t';
    for (std::size_t i = 0; i < h.examples.size(); ++i) out << (i ? " || " : "") << tsv_field(h.examples[i]);
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace coshare::library
