#include "coshare/pipeline/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/graph/thresholds.hpp"

namespace coshare::pipeline {

namespace {

namespace fs = std::filesystem;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  for (auto part : split(value, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  const auto v = parse_double(trim(value));
  if (!v) throw ConfigError("config key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
  return *v;
}

std::int64_t to_int(std::string_view key, std::string_view value) {
  const auto v = parse_int(trim(value));
  if (!v) throw ConfigError("config key '" + std::string(key) + "': not an integer: '" + std::string(value) + "'");
  return *v;
}

std::size_t to_count(std::string_view key, std::string_view value) {
  const auto v = to_int(key, value);
  if (v < 0) throw ConfigError("config key '" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

bool to_bool(std::string_view key, std::string_view value) {
  const auto v = to_lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + std::string(key) + "': not a boolean: '" + std::string(value) + "'");
}

corpus::Date to_date(std::string_view key, std::string_view value) {
  const auto d = corpus::parse_date(trim(value));
  if (!d) throw ConfigError("config key '" + std::string(key) + "': expected YYYY-MM-DD, got '" + std::string(value) + "'");
  return *d;
}

std::string fmt(double v) { return format_double(v); }

std::vector<ConfigKey> make_keys() {
  std::vector<ConfigKey> k;
  auto path_key = [&](std::string name, std::string help, fs::path PipelineConfig::*member) {
    k.push_back({std::move(name), std::move(help), false,
                 [member](PipelineConfig& c, std::string_view v) { c.*member = fs::path(std::string(trim(v))); },
                 [member](const PipelineConfig& c) { return (c.*member).string(); }});
  };
  path_key("shares", "shares.jsonl input", &PipelineConfig::shares);
  path_key("articles", "articles.jsonl input", &PipelineConfig::articles);
  path_key("claims", "claims.jsonl input", &PipelineConfig::claims);
  path_key("catalog", "catalog.csv input", &PipelineConfig::catalog);
  path_key("out_dir", "output directory", &PipelineConfig::out_dir);

  k.push_back({"seed", "master seed", false,
               [](PipelineConfig& c, std::string_view v) {
                 const auto s = to_int("seed", v);
                 if (s < 0) throw ConfigError("seed must be non-negative");
                 c.seed = static_cast<std::uint64_t>(s);
               },
               [](const PipelineConfig& c) { return std::to_string(c.seed); }});
  k.push_back({"threads", "worker threads", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.threads = static_cast<unsigned>(std::max<std::size_t>(1, to_count("threads", v)));
               },
               [](const PipelineConfig& c) { return std::to_string(c.threads); }});
  k.push_back({"strict", "malformed input lines are fatal", true,
               [](PipelineConfig& c, std::string_view v) {
                 c.strict = to_bool("strict", v);
                 c.corpus.strict = c.strict;
               },
               [](const PipelineConfig& c) { return std::string(c.strict ? "true" : "false"); }});

  k.push_back({"date_start", "first day of the study window", false,
               [](PipelineConfig& c, std::string_view v) { c.corpus.date_start = to_date("date_start", v); },
               [](const PipelineConfig& c) { return corpus::format_date(c.corpus.date_start); }});
  k.push_back({"date_end", "last day of the study window", false,
               [](PipelineConfig& c, std::string_view v) { c.corpus.date_end = to_date("date_end", v); },
               [](const PipelineConfig& c) { return corpus::format_date(c.corpus.date_end); }});
  k.push_back({"min_sharers", "minimum distinct sharers per URL", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.corpus.min_sharers = static_cast<int>(to_int("min_sharers", v));
               },
               [](const PipelineConfig& c) { return std::to_string(c.corpus.min_sharers); }});
  k.push_back({"false_labels", "verdicts treated as false (comma list)", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.corpus.false_label_set.clear();
                 for (auto& s : split_list(v)) c.corpus.false_label_set.insert(to_lower(s));
               },
               [](const PipelineConfig& c) {
                 return join({c.corpus.false_label_set.begin(), c.corpus.false_label_set.end()});
               }});
  k.push_back({"quote_strip", "remove direct quotations from reliable articles", true,
               [](PipelineConfig& c, std::string_view v) { c.corpus.quote_strip = to_bool("quote_strip", v); },
               [](const PipelineConfig& c) { return std::string(c.corpus.quote_strip ? "true" : "false"); }});
  k.push_back({"tracking_params", "query parameters dropped from URLs (comma list, * = prefix)", false,
               [](PipelineConfig& c, std::string_view v) { c.corpus.tracking_params = split_list(v); },
               [](const PipelineConfig& c) { return join(c.corpus.tracking_params); }});
  k.push_back({"political_z", "mainstream political-score z threshold", false,
               [](PipelineConfig& c, std::string_view v) { c.mainstream.political_z = to_double("political_z", v); },
               [](const PipelineConfig& c) { return fmt(c.mainstream.political_z); }});
  k.push_back({"share_top", "mainstream share-popularity percentile cutoff", false,
               [](PipelineConfig& c, std::string_view v) { c.mainstream.share_top = to_double("share_top", v); },
               [](const PipelineConfig& c) { return fmt(c.mainstream.share_top); }});
  k.push_back({"visit_top", "mainstream visit-rank cutoff", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.mainstream.visit_top = static_cast<int>(to_int("visit_top", v));
               },
               [](const PipelineConfig& c) { return std::to_string(c.mainstream.visit_top); }});

  k.push_back({"n_samples", "threshold subgraph samples", false,
               [](PipelineConfig& c, std::string_view v) { c.n_samples = to_count("n_samples", v); },
               [](const PipelineConfig& c) { return std::to_string(c.n_samples); }});
  k.push_back({"sample_dim", "nodes per side in each threshold sample", false,
               [](PipelineConfig& c, std::string_view v) { c.sample_dim = to_count("sample_dim", v); },
               [](const PipelineConfig& c) { return std::to_string(c.sample_dim); }});
  k.push_back({"quantiles", "threshold quantiles (comma list)", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.quantiles.clear();
                 for (const auto& s : split_list(v)) c.quantiles.push_back(to_double("quantiles", s));
               },
               [](const PipelineConfig& c) {
                 std::vector<std::string> parts;
                 for (double q : c.effective_quantiles()) parts.push_back(fmt(q));
                 return join(parts);
               }});
  k.push_back({"coshared_q", "quantile defining the co-shared group", false,
               [](PipelineConfig& c, std::string_view v) { c.coshared_q = to_double("coshared_q", v); },
               [](const PipelineConfig& c) { return fmt(c.coshared_q); }});
  k.push_back({"control_q", "quantile defining the control group", false,
               [](PipelineConfig& c, std::string_view v) { c.control_q = to_double("control_q", v); },
               [](const PipelineConfig& c) { return fmt(c.control_q); }});
  k.push_back({"aggregation", "article ranking aggregate (sum|max)", false,
               [](PipelineConfig& c, std::string_view v) {
                 const auto a = graph::parse_aggregation(trim(v));
                 if (!a) throw ConfigError("aggregation must be sum or max");
                 c.aggregation = *a;
               },
               [](const PipelineConfig& c) { return std::string(graph::to_string(c.aggregation)); }});
  k.push_back({"top_k", "articles per domain in the ranking report (0 = all)", false,
               [](PipelineConfig& c, std::string_view v) { c.top_k = to_count("top_k", v); },
               [](const PipelineConfig& c) { return std::to_string(c.top_k); }});

  k.push_back({"k_low", "entity clusters for low-dimensional labels", false,
               [](PipelineConfig& c, std::string_view v) { c.k_low = static_cast<int>(to_int("k_low", v)); },
               [](const PipelineConfig& c) { return std::to_string(c.k_low); }});
  k.push_back({"k_high", "entity clusters for high-dimensional labels", false,
               [](PipelineConfig& c, std::string_view v) { c.k_high = static_cast<int>(to_int("k_high", v)); },
               [](const PipelineConfig& c) { return std::to_string(c.k_high); }});
  k.push_back({"embedding_dim", "embedding dimension", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.embedding_dim = static_cast<int>(to_int("embedding_dim", v));
               },
               [](const PipelineConfig& c) { return std::to_string(c.embedding_dim); }});
  k.push_back({"window", "co-occurrence window", false,
               [](PipelineConfig& c, std::string_view v) { c.window = static_cast<int>(to_int("window", v)); },
               [](const PipelineConfig& c) { return std::to_string(c.window); }});
  k.push_back({"power_iterations", "randomized SVD power iterations", false,
               [](PipelineConfig& c, std::string_view v) {
                 c.power_iterations = static_cast<int>(to_int("power_iterations", v));
               },
               [](const PipelineConfig& c) { return std::to_string(c.power_iterations); }});
  k.push_back({"max_evidence", "example sentences kept per label", false,
               [](PipelineConfig& c, std::string_view v) { c.max_evidence = to_count("max_evidence", v); },
               [](const PipelineConfig& c) { return std::to_string(c.max_evidence); }});

  k.push_back({"recurring_top", "top frequency fraction for the recurring library", false,
               [](PipelineConfig& c, std::string_view v) { c.recurring_top = to_double("recurring_top", v); },
               [](const PipelineConfig& c) { return fmt(c.recurring_top); }});
  k.push_back({"recurring_mode", "tie handling at the recurring cutoff (tie_inclusive|strict)", false,
               [](PipelineConfig& c, std::string_view v) {
                 const auto t = trim(v);
                 if (t == "tie_inclusive") c.recurring_mode = library::RecurringMode::tie_inclusive;
                 else if (t == "strict") c.recurring_mode = library::RecurringMode::strict;
                 else throw ConfigError("recurring_mode must be tie_inclusive or strict");
               },
               [](const PipelineConfig& c) {
                 return std::string(c.recurring_mode == library::RecurringMode::strict ? "strict" : "tie_inclusive");
               }});

  k.push_back({"outlet_classes", "outlet classes tested (all_reliable,trustworthy,liberal,conservative)", false,
               [](PipelineConfig& c, std::string_view v) { c.outlet_classes = split_list(v); },
               [](const PipelineConfig& c) { return join(c.outlet_classes); }});
  k.push_back({"alternative", "test alternative (greater|less|two_sided)", false,
               [](PipelineConfig& c, std::string_view v) {
                 const auto a = stats::parse_alternative(trim(v));
                 if (!a) throw ConfigError("alternative must be greater, less or two_sided");
                 c.alternative = *a;
               },
               [](const PipelineConfig& c) { return std::string(stats::to_string(c.alternative)); }});
  k.push_back({"zero_policy", "zero differences (discard|pratt)", false,
               [](PipelineConfig& c, std::string_view v) {
                 const auto z = stats::parse_zero_policy(trim(v));
                 if (!z) throw ConfigError("zero_policy must be discard or pratt");
                 c.zero_policy = *z;
               },
               [](const PipelineConfig& c) { return std::string(stats::to_string(c.zero_policy)); }});
  k.push_back({"sample_sd", "sample instead of population sd in presence summaries", true,
               [](PipelineConfig& c, std::string_view v) { c.sample_sd = to_bool("sample_sd", v); },
               [](const PipelineConfig& c) { return std::string(c.sample_sd ? "true" : "false"); }});
  return k;
}

const ConfigKey* find_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

}  // namespace

std::vector<double> PipelineConfig::effective_quantiles() const {
  auto q = quantiles.empty() ? graph::default_quantiles() : quantiles;
  for (double needed : {coshared_q, control_q})
    if (std::find(q.begin(), q.end(), needed) == q.end()) q.push_back(needed);
  return q;
}

void PipelineConfig::validate() const {
  corpus.validate();
  if (n_samples < 2) throw ConfigError("n_samples must be at least 2");
  if (sample_dim < 1) throw ConfigError("sample_dim must be at least 1");
  for (double q : effective_quantiles())
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("quantiles must lie in (0, 1)");
  if (!(control_q <= coshared_q)) throw ConfigError("control_q must not exceed coshared_q");
  if (k_low < 1 || k_high < 1) throw ConfigError("k_low and k_high must be positive");
  if (k_low >= k_high) throw ConfigError("k_low must be smaller than k_high");
  if (embedding_dim < 1) throw ConfigError("embedding_dim must be positive");
  if (window < 1) throw ConfigError("window must be positive");
  if (power_iterations < 0) throw ConfigError("power_iterations must be non-negative");
  if (!(recurring_top > 0.0 && recurring_top < 1.0)) throw ConfigError("recurring_top must lie in (0, 1)");
  if (outlet_classes.empty()) throw ConfigError("outlet_classes is empty");
  for (const auto& c : outlet_classes)
    if (!is_known_outlet_class(c)) throw ConfigError("unknown outlet class '" + c + "'");
  if (out_dir.empty()) throw ConfigError("out_dir is empty");
}

void PipelineConfig::validate_inputs() const {
  validate();
  const std::pair<const char*, const fs::path*> inputs[] = {
      {"catalog", &catalog}, {"shares", &shares}, {"articles", &articles}, {"claims", &claims}};
  for (const auto& [name, p] : inputs) {
    if (p->empty()) throw ConfigError(std::string("config is missing the ") + name + " path");
    if (!fs::is_regular_file(*p)) throw ConfigError(std::string(name) + " file not found: " + p->string());
  }
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = make_keys();
  return keys;
}

void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value) {
  const auto* k = find_key(key);
  if (k == nullptr) throw ConfigError("unknown config key '" + std::string(key) + "'");
  k->set(cfg, value);
}

std::string get_config_value(const PipelineConfig& cfg, std::string_view key) {
  const auto* k = find_key(key);
  if (k == nullptr) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return k->get(cfg);
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  PipelineConfig cfg;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty())
      throw ConfigError("config file " + path.string() + ": sections are not supported ('" + item.fullname() + "')");
    std::string value;
    for (const auto& v : item.inputs) {
      if (!value.empty()) value += ',';
      value += v;
    }
    set_config_value(cfg, item.name, value);
  }
  const auto base = fs::absolute(path).parent_path();
  for (fs::path* p : {&cfg.shares, &cfg.articles, &cfg.claims, &cfg.catalog, &cfg.out_dir})
    if (!p->empty() && p->is_relative()) *p = (base / *p).lexically_normal();
  return cfg;
}

std::string canonical_text(const PipelineConfig& cfg, const std::vector<std::string>& keys) {
  std::ostringstream out;
  for (const auto& k : config_keys()) {
    if (!keys.empty() && std::find(keys.begin(), keys.end(), k.name) == keys.end()) continue;
    out << k.name << " = \"" << k.get(cfg) << "\"\n";
  }
  return out.str();
}

void write_config(const fs::path& path, const PipelineConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << canonical_text(cfg);
  if (!out) throw DataError("write failed for " + path.string());
}

bool is_known_outlet_class(std::string_view c) {
  return c == "all_reliable" || c == "trustworthy" || c == "liberal" || c == "conservative";
}

bool in_outlet_class(std::string_view outlet_class, const corpus::DomainCatalog& catalog, std::string_view domain) {
  const auto cls = catalog.classify_domain(domain);
  if (cls.kind != corpus::OutletKind::reliable) return false;
  if (outlet_class == "all_reliable") return true;
  if (outlet_class == "trustworthy") return cls.trustworthy;
  if (outlet_class == "liberal") return cls.lean == corpus::Lean::liberal;
  if (outlet_class == "conservative") return cls.lean == corpus::Lean::conservative;
  throw ConfigError("unknown outlet class '" + std::string(outlet_class) + "'");
}

}  // namespace coshare::pipeline
