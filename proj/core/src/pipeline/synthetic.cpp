#include "coshare/pipeline/synthetic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <unordered_set>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/common/rng.hpp"
#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/url.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/narrative/lexicon.hpp"
#include "coshare/pipeline/config.hpp"

namespace coshare::pipeline {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Triple {
  std::string agent;
  std::string verb;  // lemma
  std::string patient;

  [[nodiscard]] std::string label() const { return agent + " " + verb + " " + patient; }
  [[nodiscard]] std::string sentence() const {
    return "The " + agent + " " + narrative::verb_past(verb) + " the " + patient;
  }
};

// Knuth's multiplication method on chunks of at most 30 so exp(-lambda)
// never underflows.
std::size_t poisson(Rng& rng, double lambda) {
  std::size_t total = 0;
  while (lambda > 0.0) {
    const double part = std::min(lambda, 30.0);
    lambda -= part;
    const double limit = std::exp(-part);
    double prod = uniform01(rng);
    while (prod > limit) {
      ++total;
      prod *= uniform01(rng);
    }
  }
  return total;
}

std::size_t uniform_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
}

std::string timestamp(std::int64_t epoch) {
  const auto t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

class TripleSource {
 public:
  TripleSource(const std::vector<std::string>& nouns, const std::vector<std::string>& verbs)
      : nouns_(nouns), verbs_(verbs) {}

  Triple draw(Rng& rng) const {
    Triple t;
    t.agent = nouns_[uniform_below(rng, nouns_.size())];
    do {
      t.patient = nouns_[uniform_below(rng, nouns_.size())];
    } while (t.patient == t.agent && nouns_.size() > 1);
    t.verb = verbs_[uniform_below(rng, verbs_.size())];
    return t;
  }

  // Draws a triple whose label has not been used before.
  Triple draw_unique(Rng& rng, std::unordered_set<std::string>& used) const {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto t = draw(rng);
      if (used.insert(t.label()).second) return t;
    }
    throw ConfigError("synthetic vocabulary too small for the requested number of distinct sentences");
  }

 private:
  const std::vector<std::string>& nouns_;
  const std::vector<std::string>& verbs_;
};

struct Article {
  std::string url;
  std::string domain;
  std::string headline;
  std::string body;
};

std::string join_sentences(const std::vector<std::string>& sentences, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < sentences.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += sentences[i] + ".";
  }
  return out;
}

}  // namespace

void SyntheticSpec::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("synthetic spec: " + m); };
  for (double p : {planted_overlap_coshared, planted_overlap_control})
    if (!(p >= 0.0 && p <= 0.5)) fail("planted overlaps must lie in [0, 0.5]");
  if (n_designated_fake > n_fake_urls) fail("n_designated_fake exceeds n_fake_urls");
  if (n_coshared_articles + n_control_articles > n_reliable_urls)
    fail("designated articles exceed n_reliable_urls");
  if (n_users > 0 && clique_size > n_users) fail("clique_size exceeds n_users");
  if (labels_per_article < 2) fail("labels_per_article must be at least 2");
  if (n_planted == 0 || n_claim_planted > n_planted) fail("need 0 < n_claim_planted <= n_planted");
  if (planted_per_fake_story > n_planted - n_claim_planted && n_planted > n_claim_planted)
    fail("planted_per_fake_story exceeds the fake-story planted set");
  if (vocab_size < 10) fail("vocab_size must be at least 10");
  if (n_fake_domains == 0 || n_mainstream_domains == 0) fail("need at least one fake and one mainstream domain");
  if (3 * n_mainstream_domains > n_fake_domains + n_mainstream_domains + n_other_reliable_domains)
    fail("mainstream domains must be at most a third of the catalog for the political z-score cut");
  if (sharers_min == 0 || sharers_min > sharers_max) fail("need 0 < sharers_min <= sharers_max");
  if (!(reliable_only_fraction >= 0.0 && reliable_only_fraction < 1.0)) fail("reliable_only_fraction in [0, 1)");
  if (min_sharers < 1) fail("min_sharers must be positive");
}

const std::vector<std::string>& template_verbs() {
  static const std::vector<std::string> verbs = [] {
    const std::vector<std::string> wanted{
        "accuse", "approve", "arrest", "attack",  "ban",      "block",   "cancel",  "cause",   "censor", "control",
        "create", "damage",  "defend", "destroy", "endorse",  "expose",  "fund",    "harm",    "hide",   "ignore",
        "infect", "invent",  "mock",   "poison",  "promote",  "protect", "reject",  "replace", "rig",    "silence",
        "spread", "steal",   "sue",    "support", "threaten", "track",   "trigger", "warn",    "blame",  "praise"};
    const auto& lexicon = narrative::verb_lexicon();
    std::vector<std::string> out;
    for (const auto& v : wanted) {
      if (!std::binary_search(lexicon.begin(), lexicon.end(), v)) continue;
      const auto back = narrative::verb_lemma(narrative::verb_past(v));
      if (back && *back == v) out.push_back(v);
    }
    return out;
  }();
  return verbs;
}

std::vector<std::string> pseudo_nouns(std::size_t count) {
  static const std::vector<std::string> all = [] {
    const std::string consonants = "bdfgklmnprtvz";
    const std::string vowels = "aeiou";
    const std::string finals = "kmnrt";
    std::vector<std::string> words;
    for (char c1 : consonants)
      for (char v1 : vowels)
        for (char c2 : consonants)
          for (char v2 : vowels)
            for (char f : finals) {
              std::string w{c1, v1, c2, v2, f};
              if (narrative::closed_class(w) != narrative::WordClass::other) continue;
              if (narrative::verb_lemma(w) || narrative::noun_lemma(w) != w) continue;
              if (narrative::in_gazetteer(w)) continue;
              words.push_back(std::move(w));
            }
    Rng rng(0x70736575646fULL);
    shuffle_in_place(rng, words);
    return words;
  }();
  if (count > all.size()) throw ConfigError("at most " + std::to_string(all.size()) + " pseudo-nouns available");
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count)};
}

SyntheticOutput generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed, const fs::path& dir) {
  spec.validate();
  fs::create_directories(dir);
  const auto& verbs = template_verbs();
  if (verbs.size() < 5) throw ConfigError("verb lexicon lacks template verbs");
  const auto tracking = corpus::default_tracking_params();
  auto canon = [&](const std::string& url) { return corpus::canonicalize_url(url, tracking); };

  // Disjoint noun pools keep background sentences from ever producing a
  // planted label.
  const std::size_t n_planted_nouns = 2 * spec.n_planted;
  const std::size_t n_fake_nouns = std::max<std::size_t>(50, spec.vocab_size / 2);
  const std::size_t n_claim_nouns = std::max<std::size_t>(30, spec.vocab_size / 4);
  const auto nouns = pseudo_nouns(n_planted_nouns + spec.vocab_size + n_fake_nouns + n_claim_nouns);
  auto slice = [&](std::size_t from, std::size_t n) {
    return std::vector<std::string>(nouns.begin() + static_cast<std::ptrdiff_t>(from),
                                    nouns.begin() + static_cast<std::ptrdiff_t>(from + n));
  };
  const auto planted_nouns = slice(0, n_planted_nouns);
  const auto article_nouns = slice(n_planted_nouns, spec.vocab_size);
  const auto fake_nouns = slice(n_planted_nouns + spec.vocab_size, n_fake_nouns);
  const auto claim_nouns = slice(n_planted_nouns + spec.vocab_size + n_fake_nouns, n_claim_nouns);

  Rng text_rng(derive_seed(seed, "synthetic.text"));
  std::vector<Triple> planted;
  for (std::size_t i = 0; i < spec.n_planted; ++i)
    planted.push_back({planted_nouns[2 * i], verbs[uniform_below(text_rng, verbs.size())], planted_nouns[2 * i + 1]});

  // ---- catalog
  struct Domain {
    std::string name;
    bool fake = false;
    bool trustworthy = false;
    double political = 0.0;
    double share_rank = 1.0;
    int visit_rank = 5000;
    double partisanship = 0.0;
  };
  std::vector<Domain> domains;
  Rng cat_rng(derive_seed(seed, "synthetic.catalog"));
  std::vector<std::size_t> fake_domains, mainstream_domains, reliable_domains;
  for (std::size_t i = 0; i < spec.n_fake_domains; ++i) {
    fake_domains.push_back(domains.size());
    domains.push_back({"fakepost" + std::to_string(i + 1) + ".net", true, false, 0.5, 0.2, 800,
                       0.6 + 0.2 * uniform01(cat_rng)});
  }
  for (std::size_t i = 0; i < spec.n_mainstream_domains; ++i) {
    mainstream_domains.push_back(domains.size());
    reliable_domains.push_back(domains.size());
    const double frac = static_cast<double>(i) / static_cast<double>(spec.n_mainstream_domains);
    domains.push_back({"mainstream" + std::to_string(i + 1) + ".com", false, i % 3 != 2, 0.9, 0.01 + 0.08 * frac,
                       50 + static_cast<int>(400 * frac), i % 2 == 0 ? -0.6 : 0.55});
  }
  for (std::size_t i = 0; i < spec.n_other_reliable_domains; ++i) {
    reliable_domains.push_back(domains.size());
    domains.push_back({"localnews" + std::to_string(i + 1) + ".com", false, uniform01(cat_rng) < 0.5,
                       0.2 + 0.2 * uniform01(cat_rng), 0.3 + 0.5 * uniform01(cat_rng),
                       1000 + static_cast<int>(uniform_below(cat_rng, 4000)), -0.4 + 0.8 * uniform01(cat_rng)});
  }

  SyntheticOutput out;
  out.catalog = dir / "catalog.csv";
  {
    auto f = open_out(out.catalog);
    f << "domain,is_fake,is_trustworthy,political_score,pop_share_rank,pop_visit_rank,partisanship\n";
    for (const auto& d : domains)
      f << d.name << ',' << (d.fake ? "true" : "false") << ',' << (d.trustworthy ? "true" : "false") << ','
        << format_double(d.political) << ',' << format_double(d.share_rank) << ',' << d.visit_rank << ','
        << format_double(d.partisanship) << '\n';
  }
  {
    const auto catalog = corpus::DomainCatalog::load_csv(out.catalog);
    for (std::size_t i = 0; i < domains.size(); ++i) {
      const bool want = std::find(mainstream_domains.begin(), mainstream_domains.end(), i) != mainstream_domains.end();
      if (catalog.classify_domain(domains[i].name).mainstream != want)
        throw ConfigError("synthetic catalog: mainstream classification of " + domains[i].name +
                          " does not match the design; adjust the domain counts");
    }
  }

  // ---- URLs
  Rng url_rng(derive_seed(seed, "synthetic.urls"));
  std::vector<std::string> fake_urls, reliable_urls;
  std::vector<std::size_t> fake_url_domain, reliable_url_domain;
  for (std::size_t i = 0; i < spec.n_fake_urls; ++i) {
    const auto d = fake_domains[uniform_below(url_rng, fake_domains.size())];
    fake_url_domain.push_back(d);
    fake_urls.push_back("https://www." + domains[d].name + "/story/" + std::to_string(i + 1));
  }
  const std::size_t n_designated = spec.n_coshared_articles + spec.n_control_articles;
  for (std::size_t i = 0; i < spec.n_reliable_urls; ++i) {
    std::size_t d;
    if (i < spec.n_coshared_articles) d = mainstream_domains[i % mainstream_domains.size()];
    else if (i < n_designated) d = mainstream_domains[(i - spec.n_coshared_articles) % mainstream_domains.size()];
    else d = reliable_domains[uniform_below(url_rng, reliable_domains.size())];
    reliable_url_domain.push_back(d);
    reliable_urls.push_back("https://www." + domains[d].name + "/article/" + std::to_string(i + 1));
  }

  auto& truth = out.truth_data;
  for (std::size_t i = 0; i < spec.n_designated_fake; ++i) truth.designated_fake_urls.push_back(canon(fake_urls[i]));
  for (std::size_t i = 0; i < spec.n_coshared_articles; ++i) truth.coshared_urls.push_back(canon(reliable_urls[i]));
  for (std::size_t i = spec.n_coshared_articles; i < n_designated; ++i)
    truth.control_urls.push_back(canon(reliable_urls[i]));

  // ---- shares
  out.shares = dir / "shares.jsonl";
  {
    auto f = open_out(out.shares);
    Rng share_rng(derive_seed(seed, "synthetic.shares"));
    const std::size_t clique = std::min(spec.clique_size, spec.n_users);
    const auto rel_only = static_cast<std::size_t>(
        std::floor(spec.reliable_only_fraction * static_cast<double>(spec.n_users - clique)));
    std::vector<std::uint32_t> clique_users, reliable_only_users, mixed_users, non_clique_users;
    for (std::size_t u = 0; u < spec.n_users; ++u) {
      const auto id = static_cast<std::uint32_t>(u);
      if (u < clique) clique_users.push_back(id);
      else if (u < clique + rel_only) reliable_only_users.push_back(id);
      else mixed_users.push_back(id);
      if (u >= clique) non_clique_users.push_back(id);
    }
    std::vector<std::uint32_t> everyone(spec.n_users);
    for (std::size_t u = 0; u < spec.n_users; ++u) everyone[u] = static_cast<std::uint32_t>(u);
    auto pool_or_all = [&](const std::vector<std::uint32_t>& pool) -> const std::vector<std::uint32_t>& {
      return pool.empty() ? everyone : pool;
    };

    const std::int64_t t0 = 1546300800;  // 2019-01-01T00:00:00Z
    const std::int64_t span = 2 * 365 * 86400;
    auto emit = [&](std::uint32_t user, const std::string& url) {
      std::string shared_url = url;
      if (uniform_below(share_rng, 10) == 0) shared_url += "?utm_source=social";
      json rec{{"user_id", "user" + std::to_string(user + 1)},
               {"url", shared_url},
               {"shared_at", timestamp(t0 + static_cast<std::int64_t>(uniform_below(
                                                  share_rng, static_cast<std::uint64_t>(span))))}};
      f << rec.dump() << '\n';
    };
    auto emit_sample = [&](const std::vector<std::uint32_t>& pool, const std::string& url) {
      if (pool.empty()) return;
      const auto s = uniform_in(share_rng, spec.sharers_min, spec.sharers_max);
      for (auto idx : sample_without_replacement(share_rng, static_cast<std::uint32_t>(pool.size()),
                                                 static_cast<std::uint32_t>(s)))
        emit(pool[idx], url);
    };

    if (spec.n_users > 0) {
      for (std::size_t i = 0; i < fake_urls.size(); ++i) {
        if (i < spec.n_designated_fake) {
          for (auto u : clique_users) emit(u, fake_urls[i]);
        } else {
          emit_sample(pool_or_all(mixed_users), fake_urls[i]);
        }
      }
      for (std::size_t i = 0; i < reliable_urls.size(); ++i) {
        if (i < spec.n_coshared_articles) {
          for (auto u : clique_users) emit(u, reliable_urls[i]);
        } else if (i < n_designated) {
          emit_sample(pool_or_all(reliable_only_users), reliable_urls[i]);
        } else {
          emit_sample(pool_or_all(non_clique_users), reliable_urls[i]);
        }
      }
    }
  }

  // ---- reliable articles with planted narratives
  std::unordered_set<std::string> used_labels;
  for (const auto& p : planted) used_labels.insert(p.label());
  const TripleSource article_source(article_nouns, verbs);
  std::vector<Article> articles;
  const std::size_t L = spec.labels_per_article;
  auto make_group = [&](std::size_t first, std::size_t n, double rate) -> double {
    if (n == 0) return 0.0;
    const double lambda = rate * static_cast<double>(n * L) / static_cast<double>(spec.n_planted);
    std::vector<std::size_t> occurrences;  // planted label index per occurrence, grouped by label
    for (std::size_t i = 0; i < spec.n_planted; ++i) {
      const auto c = std::min({poisson(text_rng, lambda), n, L});
      occurrences.insert(occurrences.end(), c, i);
    }
    // Dealing grouped occurrences cyclically over a random article order puts
    // copies of one label into distinct articles and balances article loads.
    std::vector<std::size_t> order(n);
    for (std::size_t a = 0; a < n; ++a) order[a] = a;
    shuffle_in_place(text_rng, order);
    std::vector<std::vector<std::string>> sentences(n);
    std::size_t placed = 0;
    for (std::size_t j = 0; j < occurrences.size(); ++j) {
      auto& s = sentences[order[j % n]];
      if (s.size() >= L) continue;
      s.push_back(planted[occurrences[j]].sentence());
      ++placed;
    }
    for (std::size_t a = 0; a < n; ++a) {
      auto& s = sentences[a];
      while (s.size() < L) s.push_back(article_source.draw_unique(text_rng, used_labels).sentence());
      shuffle_in_place(text_rng, s);
      const std::size_t idx = first + a;
      articles.push_back({reliable_urls[idx], domains[reliable_url_domain[idx]].name, s.front(), join_sentences(s, 1)});
    }
    return static_cast<double>(placed) / static_cast<double>(n * L);
  };
  truth.realized_overlap_coshared = make_group(0, spec.n_coshared_articles, spec.planted_overlap_coshared);
  truth.realized_overlap_control =
      make_group(spec.n_coshared_articles, spec.n_control_articles, spec.planted_overlap_control);

  // ---- fake articles
  std::vector<Triple> fake_background;
  {
    std::unordered_set<std::string> fake_used;
    const TripleSource fake_source(fake_nouns, verbs);
    for (std::size_t i = 0; i < spec.fake_background_labels; ++i)
      fake_background.push_back(fake_source.draw_unique(text_rng, fake_used));
  }
  const std::size_t n_story_planted = spec.n_planted - spec.n_claim_planted;
  for (std::size_t i = 0; i < fake_urls.size(); ++i) {
    std::vector<std::string> s;
    std::set<std::size_t> chosen;
    const std::size_t want = std::min(spec.fake_story_sentences + 1, fake_background.size());
    while (chosen.size() < want) chosen.insert(uniform_below(text_rng, fake_background.size()));
    for (auto c : chosen) s.push_back(fake_background[c].sentence());
    shuffle_in_place(text_rng, s);
    if (n_story_planted > 0) {
      for (auto idx : sample_without_replacement(text_rng, static_cast<std::uint32_t>(n_story_planted),
                                                 static_cast<std::uint32_t>(spec.planted_per_fake_story)))
        s.push_back(planted[spec.n_claim_planted + idx].sentence());
      shuffle_in_place(text_rng, s);
    }
    articles.push_back({fake_urls[i], domains[fake_url_domain[i]].name, s.front(), join_sentences(s, 1)});
  }

  out.articles = dir / "articles.jsonl";
  {
    auto f = open_out(out.articles);
    for (const auto& a : articles) {
      json rec{{"url", a.url}, {"domain", a.domain}, {"headline", a.headline}, {"body", a.body},
               {"published_at", "2020-06-01"}};
      f << rec.dump() << '\n';
    }
  }

  // ---- claims
  out.claims = dir / "claims.jsonl";
  {
    auto f = open_out(out.claims);
    std::size_t id = 0;
    auto emit = [&](const std::string& text, const std::string& verdict) {
      json rec{{"claim_id", "claim" + std::to_string(++id)}, {"text", text}, {"verdict", verdict}};
      f << rec.dump() << '\n';
    };
    for (std::size_t i = 0; i < spec.n_claim_planted; ++i) {
      emit(planted[i].sentence() + ".", "False");
      truth.claim_labels.push_back(planted[i].label());
    }
    std::unordered_set<std::string> claim_used;
    const TripleSource claim_source(claim_nouns, verbs);
    const char* verdicts[] = {"False", "Pants on Fire", "Not True", "Incorrect", "True"};
    for (std::size_t i = 0; i < spec.n_background_claims; ++i)
      emit(claim_source.draw_unique(text_rng, claim_used).sentence() + ".", verdicts[uniform_below(text_rng, 5)]);
  }
  for (const auto& p : planted) truth.planted_labels.push_back(p.label());

  // ---- pipeline config
  PipelineConfig cfg;
  cfg.shares = "shares.jsonl";
  cfg.articles = "articles.jsonl";
  cfg.claims = "claims.jsonl";
  cfg.catalog = "catalog.csv";
  cfg.out_dir = "run";
  cfg.seed = seed;
  cfg.corpus.min_sharers = spec.min_sharers;
  // Pseudo-nouns carry no meaning, so entity clustering is the identity.
  cfg.k_low = 1'000'000;
  cfg.k_high = 2'000'000;
  out.config = dir / "synthetic.conf";
  write_config(out.config, cfg);

  out.truth = dir / "truth.json";
  {
    json t{{"seed", seed},
           {"coshared_urls", truth.coshared_urls},
           {"control_urls", truth.control_urls},
           {"designated_fake_urls", truth.designated_fake_urls},
           {"planted_labels", truth.planted_labels},
           {"claim_labels", truth.claim_labels},
           {"planted_overlap_coshared", spec.planted_overlap_coshared},
           {"planted_overlap_control", spec.planted_overlap_control},
           {"realized_overlap_coshared", truth.realized_overlap_coshared},
           {"realized_overlap_control", truth.realized_overlap_control}};
    auto f = open_out(out.truth);
    f << t.dump(2) << '\n';
  }
  return out;
}

}  // namespace coshare::pipeline
