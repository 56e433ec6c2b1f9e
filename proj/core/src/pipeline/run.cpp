#include "coshare/pipeline/run.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <Eigen/Core>
#include <algorithm>
#include <cerrno>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/common/hash.hpp"
#include "coshare/common/log.hpp"
#include "coshare/common/parallel.hpp"
#include "coshare/common/rng.hpp"
#include "coshare/corpus/articles.hpp"
#include "coshare/corpus/claims.hpp"
#include "coshare/corpus/records.hpp"
#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/groups.hpp"
#include "coshare/graph/io.hpp"
#include "coshare/graph/null_model.hpp"
#include "coshare/graph/thresholds.hpp"
#include "coshare/library/library.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/narrative/clustering.hpp"
#include "coshare/narrative/embeddings.hpp"
#include "coshare/narrative/roles.hpp"
#include "coshare/narrative/text.hpp"
#include "coshare/pipeline/report.hpp"
#include "coshare/stats/logistic.hpp"

namespace coshare::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kVersion = "0.1.0";

struct StageInfo {
  Stage stage;
  std::string_view name;
  std::vector<std::string> outputs;
  std::vector<std::string> keys;  // config keys the outputs depend on
};

const std::vector<StageInfo>& stage_table() {
  static const std::vector<StageInfo> t{
      {Stage::ingest,
       "ingest",
       {"shares.tsv", "texts.jsonl", "claims_false.jsonl", "ingest_summary.json"},
       {"date_start", "date_end", "min_sharers", "false_labels", "quote_strip", "tracking_params", "strict",
        "political_z", "share_top", "visit_top"}},
      {Stage::graph, "graph", {"edges.tsv"}, {}},
      {Stage::thresholds, "thresholds", {"thresholds.json"}, {"seed", "n_samples", "sample_dim", "quantiles"}},
      {Stage::groups,
       "groups",
       {"groups.tsv", "top_articles.tsv", "score_distribution.csv", "sharers.json"},
       {"coshared_q", "control_q", "aggregation", "top_k"}},
      {Stage::extract,
       "extract",
       {"narratives.tsv", "evidence.tsv", "models/embeddings.bin", "models/embeddings.json", "models/clusters_low.bin",
        "models/clusters_low.json", "models/clusters_high.bin", "models/clusters_high.json"},
       {"seed", "k_low", "k_high", "embedding_dim", "window", "power_iterations", "max_evidence"}},
      {Stage::libraries, "libraries", {"library.tsv"}, {"recurring_top", "recurring_mode"}},
      {Stage::test,
       "test",
       {"test_report.json", "presence.tsv"},
       {"outlet_classes", "alternative", "zero_policy", "sample_sd"}},
      {Stage::report, "report", {"manifest.json"}, {}},
  };
  return t;
}

const StageInfo& info(Stage s) { return stage_table()[static_cast<std::size_t>(s)]; }

[[noreturn]] void rethrow_in_stage(Stage s, ErrorKind kind, const std::string& what) {
  const std::string msg = "stage " + std::string(to_string(s)) + ": " + what;
  switch (kind) {
    case ErrorKind::config:
      throw ConfigError(msg);
    case ErrorKind::insufficient_data:
      throw InsufficientDataError(msg);
    case ErrorKind::data:
      break;
  }
  throw DataError(msg);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  return in;
}

void write_json(const fs::path& p, const json& j) { open_out(p) << j.dump(2) << '\n'; }

json read_json(const fs::path& p) {
  auto in = open_in(p);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(p.string() + ": " + e.what());
  }
}

// Exclusive writer lock on the output directory.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) : path_(dir / ".lock") {
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        const auto pid = std::to_string(::getpid()) + "\n";
        [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
        ::close(fd);
        return;
      }
      if (errno != EEXIST) throw ConfigError("cannot create lock file " + path_.string());
      const auto owner = parse_int(trim(read_text(path_)));
      const bool stale = !owner || *owner <= 0 || (::kill(static_cast<pid_t>(*owner), 0) == -1 && errno == ESRCH);
      if (!stale)
        throw ConfigError("output directory " + dir.string() + " is locked by process " + std::to_string(*owner));
      logger().warn("removing stale lock {}", path_.string());
      std::error_code ec;
      fs::remove(path_, ec);
    }
    throw ConfigError("cannot acquire lock " + path_.string());
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;
  ~DirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }

 private:
  fs::path path_;
};

// ---- ingest ----------------------------------------------------------------

void write_shares_tsv(const fs::path& p, const std::vector<corpus::ShareRecord>& records) {
  auto out = open_out(p);
  out << "user_id\turl\tshared_at\tfollowers\n";
  for (const auto& r : records) {
    out << tsv_field(r.user_id) << '\t' << tsv_field(r.url) << '\t' << r.shared_at << '\t';
    if (r.followers) out << *r.followers;
    out << '\n';
  }
}

std::vector<corpus::ShareRecord> read_shares_tsv(const fs::path& p) {
  auto in = open_in(p);
  std::vector<corpus::ShareRecord> out;
  std::string line;
  std::getline(in, line);
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    const auto f = split(line, '\t');
    const auto at = f.size() == 4 ? parse_int(f[2]) : std::nullopt;
    if (!at) throw DataError(p.string() + ":" + std::to_string(n) + ": malformed share row");
    corpus::ShareRecord r;
    r.user_id = std::string(f[0]);
    r.url = std::string(f[1]);
    r.shared_at = *at;
    if (!f[3].empty()) r.followers = parse_int(f[3]);
    out.push_back(std::move(r));
  }
  return out;
}

struct TextDoc {
  std::string url;
  std::string domain;
  std::string kind;  // fake | reliable
  std::string headline;
  std::string body;
};

std::vector<TextDoc> read_texts(const fs::path& p) {
  auto in = open_in(p);
  std::vector<TextDoc> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = json::parse(line);
    out.push_back({j.at("url"), j.at("domain"), j.at("kind"), j.at("headline"), j.at("body")});
  }
  return out;
}

std::vector<corpus::ClaimDoc> read_claims(const fs::path& p) {
  auto in = open_in(p);
  std::vector<corpus::ClaimDoc> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = json::parse(line);
    out.push_back({j.at("claim_id"), j.at("text"), j.at("verdict")});
  }
  return out;
}

corpus::DomainCatalog load_catalog(const PipelineConfig& cfg) {
  return corpus::DomainCatalog::load_csv(cfg.catalog, cfg.mainstream);
}

void stage_ingest(const PipelineConfig& cfg, const fs::path& dir) {
  const auto catalog = load_catalog(cfg);
  auto loaded = corpus::load_share_records(cfg.shares, cfg.corpus);
  const auto filtered = corpus::filter_min_sharers(std::move(loaded.records), cfg.corpus.min_sharers);
  write_shares_tsv(dir / "shares.tsv", filtered.records);

  corpus::ArticleOptions aopts;
  aopts.tracking_params = cfg.corpus.tracking_params;
  aopts.quote_strip = cfg.corpus.quote_strip;
  aopts.strict = cfg.strict;
  corpus::ArticleLoadStats astats;
  const auto store = corpus::load_articles(cfg.articles, catalog, aopts, &astats);
  std::size_t kept_fake = 0;
  std::size_t kept_reliable = 0;
  {
    auto out = open_out(dir / "texts.jsonl");
    for (const auto& doc : store.docs()) {
      if (!filtered.retained_urls.contains(doc.url)) continue;
      const auto kind = catalog.classify_domain(doc.domain).kind;
      if (kind == corpus::OutletKind::unknown) continue;
      (kind == corpus::OutletKind::fake ? kept_fake : kept_reliable)++;
      json j;
      j["url"] = doc.url;
      j["domain"] = doc.domain;
      j["kind"] = std::string(corpus::to_string(kind));
      j["headline"] = doc.headline;
      j["body"] = doc.body;
      out << j.dump() << '\n';
    }
  }

  corpus::ClaimLoadStats cstats;
  const auto claims = corpus::load_claims(cfg.claims, cfg.corpus.false_label_set, cfg.strict, &cstats);
  {
    auto out = open_out(dir / "claims_false.jsonl");
    for (const auto& c : claims) {
      json j;
      j["claim_id"] = c.claim_id;
      j["text"] = c.text;
      j["verdict"] = c.verdict;
      out << j.dump() << '\n';
    }
  }

  json s;
  s["shares"] = {{"lines", loaded.stats.lines},
                 {"kept", loaded.stats.kept},
                 {"malformed", loaded.stats.malformed},
                 {"out_of_window", loaded.stats.out_of_window},
                 {"retained_urls", filtered.retained_urls.size()},
                 {"retained_events", filtered.records.size()}};
  s["articles"] = {{"lines", astats.lines},
                   {"loaded", astats.loaded},
                   {"malformed", astats.malformed},
                   {"skipped_empty", astats.skipped_empty},
                   {"duplicate_units", astats.duplicate_units},
                   {"kept_fake", kept_fake},
                   {"kept_reliable", kept_reliable}};
  s["claims"] = {{"lines", cstats.lines},
                 {"kept", cstats.kept},
                 {"malformed", cstats.malformed},
                 {"not_false", cstats.not_false},
                 {"duplicates", cstats.duplicates}};
  write_json(dir / "ingest_summary.json", s);
}

// ---- graph, thresholds, groups ---------------------------------------------

void stage_graph(const PipelineConfig& cfg, const fs::path& dir) {
  const auto catalog = load_catalog(cfg);
  const auto records = read_shares_tsv(dir / "shares.tsv");
  const auto graph = graph::build_bipartite_coshare(records, catalog);
  if (graph.empty())
    throw DataError("co-share graph has no edges (" + std::to_string(records.size()) + " retained share events)");
  const auto scores = graph::score_edges(graph, {cfg.threads});
  graph::write_edges_tsv(dir / "edges.tsv", graph, scores);
}

void stage_thresholds(const PipelineConfig& cfg, const fs::path& dir) {
  const auto sg = graph::read_edges_tsv(dir / "edges.tsv");
  graph::SamplingOptions opts;
  opts.n_samples = cfg.n_samples;
  opts.sample_dim = cfg.sample_dim;
  opts.seed = derive_seed(cfg.seed, "thresholds");
  opts.threads = cfg.threads;
  const auto q = cfg.effective_quantiles();
  graph::write_thresholds_json(dir / "thresholds.json",
                               graph::estimate_quantile_thresholds(sg.graph, sg.scores, q, opts));
}

json sharer_json(const graph::SharerSummary& s) {
  json j{{"n_articles", s.n_articles}, {"mean", s.mean}, {"median", s.median}, {"sd", s.sd}};
  j["mean_followers"] = s.mean_followers ? json(*s.mean_followers) : json(nullptr);
  return j;
}

void stage_groups(const PipelineConfig& cfg, const fs::path& dir) {
  const auto catalog = load_catalog(cfg);
  const auto records = read_shares_tsv(dir / "shares.tsv");
  const auto sg = graph::read_edges_tsv(dir / "edges.tsv");
  const auto thresholds = graph::read_thresholds_json(dir / "thresholds.json");

  std::set<std::string> urls;
  for (const auto& r : records) urls.insert(r.url);
  const std::vector<std::string> candidates(urls.begin(), urls.end());
  const auto groups =
      graph::assign_groups(sg.graph, sg.scores, thresholds, catalog, candidates, {cfg.coshared_q, cfg.control_q});
  graph::write_groups_tsv(dir / "groups.tsv", groups);

  {
    auto out = open_out(dir / "top_articles.tsv");
    out << "domain\trank\turl\tagg_score\tmax_score\n";
    std::set<std::string> domains;
    for (const auto& e : catalog.entries())
      if (catalog.classify_domain(e.domain).mainstream) domains.insert(e.domain);
    for (const auto& d : domains)
      for (const auto& a : graph::rank_articles_by_coshare(sg.graph, sg.scores, d, cfg.top_k, cfg.aggregation))
        out << d << '\t' << a.rank << '\t' << tsv_field(a.url) << '\t' << format_double(a.agg_score) << '\t'
            << format_double(a.max_score) << '\n';
  }
  {
    auto out = open_out(dir / "score_distribution.csv");
    out << "group,domain,url,max_score,agg_score\n";
    for (const auto& g : groups) {
      if (g.group == graph::Group::neither) continue;
      out << graph::to_string(g.group) << ',' << g.domain << ",\"" << g.url << "\"," << format_double(g.max_score)
          << ',' << format_double(g.agg_score) << '\n';
    }
  }

  std::vector<std::string> fake_urls;
  for (const auto& u : candidates)
    if (catalog.classify_url(u).kind == corpus::OutletKind::fake) fake_urls.push_back(u);
  const auto st = graph::group_descriptive_stats(records, groups, fake_urls);
  std::size_t n_cs = 0;
  std::size_t n_co = 0;
  for (const auto& g : groups) {
    n_cs += g.group == graph::Group::coshared;
    n_co += g.group == graph::Group::control;
  }
  json s;
  s["group_sizes"] = {{"coshared", n_cs}, {"control", n_co}, {"mainstream", groups.size()}};
  s["distinct_sharers"] = {
      {"coshared", sharer_json(st.coshared)}, {"control", sharer_json(st.control)}, {"fake", sharer_json(st.fake)}};
  write_json(dir / "sharers.json", s);
}

// ---- extract ---------------------------------------------------------------

struct TextUnit {
  std::string text_id;
  std::string source_class;  // fake | coshared | control | claim
  std::string url;
  std::string text;
};

std::map<std::string, graph::Group> group_map(const fs::path& p) {
  std::map<std::string, graph::Group> m;
  for (const auto& g : graph::read_groups_tsv(p))
    if (g.group != graph::Group::neither) m.emplace(g.url, g.group);
  return m;
}

std::vector<TextUnit> text_units(const fs::path& dir) {
  const auto groups = group_map(dir / "groups.tsv");
  std::vector<TextUnit> units;
  for (const auto& d : read_texts(dir / "texts.jsonl")) {
    std::string cls;
    if (d.kind == "fake") {
      cls = "fake";
    } else if (auto it = groups.find(d.url); it != groups.end()) {
      cls = std::string(graph::to_string(it->second));
    } else {
      continue;
    }
    if (!d.headline.empty()) units.push_back({d.url + "#headline", cls, d.url, d.headline});
    if (!d.body.empty()) units.push_back({d.url + "#body", cls, d.url, d.body});
  }
  for (const auto& c : read_claims(dir / "claims_false.jsonl")) units.push_back({c.claim_id, "claim", "", c.text});
  return units;
}

narrative::ClusterModel fit_clusters(const std::vector<narrative::Phrase>& phrases,
                                     const narrative::EmbeddingModel& model, int k, std::uint64_t seed,
                                     std::string_view which) {
  const auto distinct = narrative::distinct_clusterable(phrases);
  if (distinct == 0) {
    logger().warn("no clusterable phrases; {} labels use normalized phrases", which);
    return {};
  }
  if (static_cast<std::size_t>(k) >= distinct) {
    logger().warn("{} cluster count {} clamped to the {} distinct phrases; labels use normalized phrases", which, k,
                  distinct);
    return {};
  }
  return narrative::cluster_roles(phrases, model, k, seed);
}

void stage_extract(const PipelineConfig& cfg, const fs::path& dir) {
  const auto units = text_units(dir);
  std::vector<std::vector<narrative::RoleTuple>> tuples(units.size());
  std::vector<std::vector<narrative::Sentence>> sentences(units.size());
  parallel_for(units.size(), cfg.threads, [&](std::size_t i) {
    tuples[i] = narrative::extract_text_tuples(units[i].text);
    sentences[i] = narrative::split_sentences(units[i].text);
  });

  std::vector<std::string> texts;
  texts.reserve(units.size());
  for (const auto& u : units) texts.push_back(u.text);
  narrative::EmbeddingOptions eopts;
  eopts.d = cfg.embedding_dim;
  eopts.window = cfg.window;
  eopts.seed = derive_seed(cfg.seed, "embeddings");
  eopts.power_iterations = cfg.power_iterations;
  const auto emb = narrative::train_embeddings(texts, eopts);
  fs::create_directories(dir / "models");
  narrative::save_embeddings(emb, dir / "models/embeddings", eopts);

  std::vector<narrative::Phrase> phrases;
  for (const auto& t : tuples) {
    auto p = narrative::role_phrases(t);
    phrases.insert(phrases.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  const auto low = fit_clusters(phrases, emb, cfg.k_low, derive_seed(cfg.seed, "clusters_low"), "low");
  const auto high = fit_clusters(phrases, emb, cfg.k_high, derive_seed(cfg.seed, "clusters_high"), "high");
  narrative::save_clusters(low, dir / "models/clusters_low");
  narrative::save_clusters(high, dir / "models/clusters_high");

  struct Evidence {
    std::vector<std::pair<std::string, std::string>> items;  // text_id, sentence
  };
  std::map<std::pair<std::string, std::string>, Evidence> evidence;  // (dim, label)
  auto out = open_out(dir / "narratives.tsv");
  out << "text_id\tsource_class\turl\tdimensionality\tlabel\n";
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (auto dim : {narrative::Dimensionality::low, narrative::Dimensionality::high}) {
      const auto& model = dim == narrative::Dimensionality::low ? low : high;
      const auto dim_name = narrative::to_string(dim);
      std::set<std::string> seen;
      for (const auto& tuple : tuples[i]) {
        for (const auto& label : narrative::assemble_narratives({tuple}, model, dim, &emb)) {
          if (!seen.insert(label.text).second) continue;
          out << tsv_field(units[i].text_id) << '\t' << units[i].source_class << '\t' << tsv_field(units[i].url)
              << '\t' << dim_name << '\t' << tsv_field(label.text) << '\n';
          auto& ev = evidence[{dim_name, label.text}];
          if (ev.items.size() < cfg.max_evidence && tuple.sentence_id < sentences[i].size())
            ev.items.emplace_back(units[i].text_id, sentences[i][tuple.sentence_id].text);
        }
      }
    }
  }
  auto eout = open_out(dir / "evidence.tsv");
  eout << "dimensionality\tlabel\ttext_id\tsentence\n";
  for (const auto& [key, ev] : evidence)
    for (const auto& [id, sentence] : ev.items)
      eout << key.first << '\t' << tsv_field(key.second) << '\t' << tsv_field(id) << '\t' << tsv_field(sentence)
           << '\n';
}

// ---- libraries -------------------------------------------------------------

struct NarrativeRow {
  std::string text_id;
  std::string source_class;
  std::string url;
  narrative::Dimensionality dim;
  std::string label;
};

std::vector<NarrativeRow> read_narratives(const fs::path& p) {
  auto in = open_in(p);
  std::vector<NarrativeRow> out;
  std::string line;
  std::getline(in, line);
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    const auto f = split(line, '\t');
    if (f.size() != 5) throw DataError(p.string() + ":" + std::to_string(n) + ": malformed narrative row");
    out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), narrative::parse_dimensionality(f[3]),
                   std::string(f[4])});
  }
  return out;
}

void stage_libraries(const PipelineConfig& cfg, const fs::path& dir) {
  const auto rows = read_narratives(dir / "narratives.tsv");
  std::vector<library::NarrativeLibrary> libs;
  for (auto dim : {narrative::Dimensionality::low, narrative::Dimensionality::high}) {
    auto texts_of = [&](std::string_view cls) {
      std::map<std::string, std::vector<std::string>> by_text;
      for (const auto& r : rows)
        if (r.dim == dim && r.source_class == cls) by_text[r.text_id].push_back(r.label);
      library::TextLabels out;
      for (auto& [id, labels] : by_text) out.push_back(std::move(labels));
      return out;
    };
    const auto fake = texts_of("fake");
    if (fake.empty()) throw DataError("no narratives extracted from fake news texts");
    const auto claims = texts_of("claim");
    if (claims.empty()) throw DataError("no narratives extracted from false claims");
    auto all = library::build_library(fake, library::LibraryName::all_fake, dim);
    auto recurring = library::recurring_subset(all, cfg.recurring_top, cfg.recurring_mode);
    libs.push_back(std::move(all));
    libs.push_back(std::move(recurring));
    libs.push_back(library::build_library(claims, library::LibraryName::false_claims, dim));
  }
  library::write_libraries_tsv(dir / "library.tsv", libs);
}

// ---- test ------------------------------------------------------------------

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json row_json(const TestRow& r) {
  json j;
  j["outlet_class"] = r.outlet_class;
  j["library"] = r.library;
  j["dimensionality"] = r.dimensionality;
  j["status"] = r.status;
  j["n_labels"] = r.n_labels;
  j["n_coshared_articles"] = r.n_coshared_articles;
  j["n_control_articles"] = r.n_control_articles;
  j["n_effective"] = r.n_effective;
  j["statistic"] = optional_number(r.statistic);
  j["p_value"] = optional_number(r.p_value);
  j["effect_size"] = optional_number(r.effect_size);
  j["estimate"] = optional_number(r.estimate);
  j["ci"] = r.ci ? json::array({r.ci->first, r.ci->second}) : json(nullptr);
  j["method"] = r.method;
  j["alternative"] = r.alternative;
  j["zero_policy"] = r.zero_policy;
  j["reason"] = r.reason;
  return j;
}

std::vector<library::ArticleLabels> group_articles(const fs::path& dir) {
  const auto groups = group_map(dir / "groups.tsv");
  std::map<std::string, library::ArticleLabels> by_url;
  for (const auto& d : read_texts(dir / "texts.jsonl")) {
    if (d.kind != "reliable") continue;
    auto it = groups.find(d.url);
    if (it == groups.end()) continue;
    auto& a = by_url[d.url];
    a.url = d.url;
    a.group = it->second == graph::Group::coshared ? library::ArticleGroup::coshared : library::ArticleGroup::control;
  }
  for (const auto& r : read_narratives(dir / "narratives.tsv")) {
    if (r.source_class != "coshared" && r.source_class != "control") continue;
    auto it = by_url.find(r.url);
    if (it == by_url.end()) continue;
    (r.dim == narrative::Dimensionality::low ? it->second.low : it->second.high).insert(r.label);
  }
  std::vector<library::ArticleLabels> out;
  for (auto& [url, a] : by_url) out.push_back(std::move(a));
  return out;
}

json presence_summary_json(const library::PresenceSummary& s) {
  return {{"group", std::string(library::to_string(s.group))},
          {"library", s.library},
          {"n_articles", s.n_articles},
          {"mean_count", s.mean_count},
          {"sd_count", s.sd_count},
          {"mean_ratio_percent", s.mean_ratio},
          {"sd_ratio_percent", s.sd_ratio}};
}

json logistic_json(const std::vector<library::ArticleLabels>& articles,
                   const std::vector<library::NarrativeLibrary>& libs, const corpus::DomainCatalog& catalog) {
  json j;
  j["model"] = "coshared ~ union_count + domain fixed effects";
  const auto gp = library::summarize_group_presence(articles, libs);
  std::map<std::string, double> union_count;
  for (const auto& row : gp.rows)
    if (row.library == library::kUnionLibrary) union_count[row.url] = static_cast<double>(row.count);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(articles.size()), 1);
  std::vector<int> y;
  std::vector<std::string> fe;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    x(static_cast<Eigen::Index>(i), 0) = union_count[articles[i].url];
    y.push_back(articles[i].group == library::ArticleGroup::coshared ? 1 : 0);
    fe.push_back(catalog.classify_url(articles[i].url).domain);
  }
  try {
    const auto r = stats::logistic_regression(x, {"union_count"}, y, fe);
    j["status"] = "ok";
    j["n_observations"] = r.n_observations;
    j["coefficient"] = r.coefficients.at("union_count");
    j["odds_ratio"] = r.odds_ratios.at("union_count");
    j["std_error"] = r.std_errors.at("union_count");
    j["converged"] = r.converged;
    j["separation"] = r.separation;
    j["reason"] = "";
  } catch (const Error& e) {
    j["status"] = "insufficient data";
    j["reason"] = e.what();
  }
  return j;
}

void stage_test(const PipelineConfig& cfg, const fs::path& dir) {
  const auto catalog = load_catalog(cfg);
  const auto libs = library::read_libraries_tsv(dir / "library.tsv");
  const auto articles = group_articles(dir);

  json report;
  report["rows"] = json::array();
  report["presence"] = json::object();
  auto pout = open_out(dir / "presence.tsv");
  pout << "outlet_class\turl\tgroup\tlibrary\tcount\tn_labels\tratio\n";
  for (const auto& cls : cfg.outlet_classes) {
    std::vector<library::ArticleLabels> subset;
    for (const auto& a : articles)
      if (in_outlet_class(cls, catalog, catalog.classify_url(a.url).domain)) subset.push_back(a);
    for (auto name : {library::LibraryName::all_fake, library::LibraryName::recurring_fake,
                      library::LibraryName::false_claims})
      for (auto dim : {narrative::Dimensionality::low, narrative::Dimensionality::high}) {
        auto it = std::find_if(libs.begin(), libs.end(),
                               [&](const auto& l) { return l.name == name && l.dimensionality == dim; });
        library::NarrativeLibrary lib{name, dim, {}};
        if (it != libs.end()) lib = *it;
        report["rows"].push_back(row_json(paired_library_test(lib, subset, cls, cfg.alternative, cfg.zero_policy)));
      }
    const auto gp = library::summarize_group_presence(subset, libs, cfg.sample_sd);
    json summaries = json::array();
    for (const auto& s : gp.summaries) summaries.push_back(presence_summary_json(s));
    report["presence"][cls] = std::move(summaries);
    for (const auto& r : gp.rows)
      pout << cls << '\t' << tsv_field(r.url) << '\t' << library::to_string(r.group) << '\t' << r.library << '\t'
           << r.count << '\t' << r.n_labels << '\t' << format_double(r.ratio) << '\n';
  }
  report["logistic"] = logistic_json(articles, libs, catalog);
  const auto sharers = read_json(dir / "sharers.json");
  report["group_sizes"] = sharers.at("group_sizes");
  std::size_t with_text_cs = 0;
  for (const auto& a : articles) with_text_cs += a.group == library::ArticleGroup::coshared;
  report["group_sizes"]["coshared_with_text"] = with_text_cs;
  report["group_sizes"]["control_with_text"] = articles.size() - with_text_cs;
  report["distinct_sharers"] = sharers.at("distinct_sharers");
  json lib_sizes = json::object();
  for (const auto& l : libs)
    lib_sizes[std::string(library::to_string(l.name)) + ":" + narrative::to_string(l.dimensionality)] = l.size();
  report["library_sizes"] = std::move(lib_sizes);
  write_json(dir / "test_report.json", report);
}

// ---- stamps and manifest ---------------------------------------------------

std::string stage_key(const PipelineConfig& cfg, Stage s, const std::string& upstream,
                      const std::string& inputs_digest) {
  std::string text = std::string(to_string(s)) + "\n" + std::string(kVersion) + "\n" +
                     (info(s).keys.empty() ? std::string() : canonical_text(cfg, info(s).keys)) + upstream + "\n";
  if (s == Stage::ingest) text += inputs_digest;
  return sha256_hex(text);
}

bool outputs_present(const fs::path& dir, Stage s) {
  return std::all_of(info(s).outputs.begin(), info(s).outputs.end(),
                     [&](const std::string& n) { return fs::exists(dir / n); });
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const PipelineConfig& cfg, PipelineRun& run, const std::string& started) {
  json m;
  m["tool"] = "coshare";
  m["version"] = std::string(kVersion);
  m["compiler"] = __VERSION__;
  m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  m["config_hash"] = run.config_hash;
  m["seed"] = run.seed;
  m["started_at"] = started;
  m["finished_at"] = utc_now();
  m["inputs"] = {{"shares", cfg.shares.string()},
                 {"articles", cfg.articles.string()},
                 {"claims", cfg.claims.string()},
                 {"catalog", cfg.catalog.string()}};
  json stages = json::array();
  for (const auto& rec : run.stages) {
    json s;
    s["stage"] = std::string(to_string(rec.stage));
    s["key"] = rec.key;
    s["cached"] = rec.cached;
    s["seconds"] = rec.seconds;
    json outputs = json::array();
    if (rec.stage != Stage::report)
      for (const auto& n : info(rec.stage).outputs)
        outputs.push_back({{"path", n}, {"sha256", sha256_file(run.out_dir / n)}});
    s["outputs"] = std::move(outputs);
    stages.push_back(std::move(s));
  }
  m["stages"] = std::move(stages);
  m["bundle_hash"] = run.bundle_hash;
  m["config"] = canonical_text(cfg);
  write_json(run.manifest, m);
}

}  // namespace

std::string_view to_string(Stage stage) { return info(stage).name; }

std::optional<Stage> parse_stage(std::string_view text) {
  for (const auto& s : stage_table())
    if (s.name == text) return s.stage;
  return std::nullopt;
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> v = [] {
    std::vector<Stage> out;
    for (const auto& s : stage_table()) out.push_back(s.stage);
    return out;
  }();
  return v;
}

const std::vector<std::string>& stage_output_names(Stage stage) { return info(stage).outputs; }

std::vector<std::string> bundle_file_names() {
  std::vector<std::string> out;
  for (const auto& s : stage_table())
    if (s.stage != Stage::report) out.insert(out.end(), s.outputs.begin(), s.outputs.end());
  return out;
}

std::string bundle_digest(const fs::path& out_dir, const std::vector<std::string>& names) {
  std::string text;
  for (const auto& n : names) text += n + "\t" + sha256_file(out_dir / n) + "\n";
  return sha256_hex(text);
}

std::string config_hash(const PipelineConfig& cfg) {
  std::vector<std::string> keys;
  for (const auto& k : config_keys())
    if (k.name != "out_dir" && k.name != "threads") keys.push_back(k.name);
  return sha256_hex(canonical_text(cfg, keys));
}

PipelineRun run_pipeline(const PipelineConfig& cfg, Stage until, const RunOptions& options) {
  cfg.validate_inputs();
  const auto started = utc_now();
  PipelineRun run;
  run.config_hash = config_hash(cfg);
  run.seed = cfg.seed;
  run.out_dir = cfg.out_dir;
  fs::create_directories(run.out_dir / "stamps");
  DirLock lock(run.out_dir);

  std::string inputs;
  for (const auto& p : {cfg.shares, cfg.articles, cfg.claims, cfg.catalog}) inputs += sha256_file(p) + "\n";

  std::string upstream;
  for (const auto& st : stage_table()) {
    if (static_cast<int>(st.stage) > static_cast<int>(until)) break;
    StageRecord rec;
    rec.stage = st.stage;
    rec.key = stage_key(cfg, st.stage, upstream, inputs);
    upstream = rec.key;
    for (const auto& n : st.outputs) rec.outputs.push_back(run.out_dir / n);
    const auto stamp = run.out_dir / "stamps" / (std::string(st.name) + ".key");
    const auto t0 = std::chrono::steady_clock::now();

    if (st.stage == Stage::report) {
      run.bundle_hash = bundle_digest(run.out_dir, bundle_file_names());
      run.manifest = run.out_dir / "manifest.json";
      rec.seconds = 0.0;
      run.stages.push_back(rec);
      try {
        write_manifest(cfg, run, started);
      } catch (const Error& e) {
        rethrow_in_stage(st.stage, e.kind(), e.what());
      } catch (const std::exception& e) {
        rethrow_in_stage(st.stage, ErrorKind::data, e.what());
      }
      logger().info("stage report: wrote {}", run.manifest.string());
      break;
    }

    if (!options.force && trim(read_text(stamp)) == rec.key && outputs_present(run.out_dir, st.stage)) {
      rec.cached = true;
      logger().info("stage {}: cached", st.name);
    } else {
      std::error_code ec;
      fs::remove(stamp, ec);
      try {
        switch (st.stage) {
          case Stage::ingest:
            stage_ingest(cfg, run.out_dir);
            break;
          case Stage::graph:
            stage_graph(cfg, run.out_dir);
            break;
          case Stage::thresholds:
            stage_thresholds(cfg, run.out_dir);
            break;
          case Stage::groups:
            stage_groups(cfg, run.out_dir);
            break;
          case Stage::extract:
            stage_extract(cfg, run.out_dir);
            break;
          case Stage::libraries:
            stage_libraries(cfg, run.out_dir);
            break;
          case Stage::test:
            stage_test(cfg, run.out_dir);
            break;
          case Stage::report:
            break;
        }
      } catch (const Error& e) {
        rethrow_in_stage(st.stage, e.kind(), e.what());
      } catch (const std::exception& e) {
        rethrow_in_stage(st.stage, ErrorKind::data, e.what());
      }
      open_out(stamp) << rec.key << '\n';
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      logger().info("stage {}: done in {:.2f}s", st.name, rec.seconds);
    }
    run.stages.push_back(std::move(rec));
  }
  return run;
}

PipelineRun run_pipeline(const fs::path& config_path, Stage until, const RunOptions& options) {
  return run_pipeline(load_config(config_path), until, options);
}

}  // namespace coshare::pipeline
