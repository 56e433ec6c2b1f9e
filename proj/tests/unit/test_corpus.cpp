#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coshare/common/error.hpp"
#include "coshare/corpus/articles.hpp"
#include "coshare/corpus/catalog.hpp"
#include "coshare/corpus/claims.hpp"
#include "coshare/corpus/config.hpp"
#include "coshare/corpus/quotes.hpp"
#include "coshare/corpus/records.hpp"
#include "coshare/corpus/url.hpp"
#include "unit/test_support.hpp"

using namespace coshare;
using namespace coshare::corpus;

TEST(Url, CanonicalizesHostFragmentAndTracking) {
  const auto tp = default_tracking_params();
  EXPECT_EQ(canonicalize_url("https://Example.com/a?utm_source=x#frag", tp), "example.com/a");
  EXPECT_EQ(canonicalize_url("http://www.Site.org/path/?fbclid=1&id=7&gclid=2", tp), "www.site.org/path?id=7");
  EXPECT_EQ(canonicalize_url("https://site.org:443/", tp), "site.org");
  EXPECT_EQ(canonicalize_url("https://site.org/Case/Path", tp), "site.org/Case/Path");
}

TEST(Url, CanonicalizationIsIdempotent) {
  const auto tp = default_tracking_params();
  const std::vector<std::string> urls = {
      "https://Example.com/a?utm_source=x#frag", "HTTP://user@News.CO.UK:80/x/y/?b=2&UTM_medium=z",
      "example.com", "https://a.b.c.example.com/?q=1#", "site.org/p?x=1&fbclid=abc&y=2"};
  for (const auto& u : urls) {
    const auto once = canonicalize_url(u, tp);
    EXPECT_EQ(canonicalize_url(once, tp), once) << u;
  }
}

TEST(Url, RegisteredDomain) {
  EXPECT_EQ(registered_domain("www.bbc.co.uk"), "bbc.co.uk");
  EXPECT_EQ(registered_domain("edition.cnn.com"), "cnn.com");
  EXPECT_EQ(url_domain("www.nytimes.com/2020/01/01/x"), "nytimes.com");
}

TEST(ShareRecords, WindowFilterDropsOldRecords) {
  const auto dir = test::scratch_dir("shares_window");
  test::write_file(dir / "shares.jsonl",
                   R"({"user_id":"u1","url":"https://a.com/1","shared_at":"2019-01-01T00:00:00Z"})"
                   "\n"
                   R"({"user_id":"u2","url":"https://a.com/1","shared_at":"2017-01-01T00:00:00Z"})"
                   "\n"
                   R"({"user_id":"u3","url":"https://Example.com/a?utm_source=x#frag","shared_at":"2021-11-14T23:59:59Z"})"
                   "\n");
  CorpusConfig cfg;
  const auto res = load_share_records(dir / "shares.jsonl", cfg);
  ASSERT_EQ(res.records.size(), 2u);
  EXPECT_EQ(res.stats.out_of_window, 1u);
  EXPECT_EQ(res.records[1].url, "example.com/a");
}

TEST(ShareRecords, MalformedLinesAreCountedOrFatalInStrictMode) {
  const auto dir = test::scratch_dir("shares_malformed");
  test::write_file(dir / "shares.jsonl",
                   R"({"user_id":"u1","url":"https://a.com/1","shared_at":"2019-01-01T00:00:00Z"})"
                   "\nnot json\n"
                   R"({"user_id":"u1","shared_at":"2019-01-01T00:00:00Z"})"
                   "\n");
  CorpusConfig cfg;
  const auto res = load_share_records(dir / "shares.jsonl", cfg);
  EXPECT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.stats.malformed, 2u);
  cfg.strict = true;
  EXPECT_THROW(load_share_records(dir / "shares.jsonl", cfg), DataError);
  EXPECT_THROW(load_share_records(dir / "missing.jsonl", cfg), DataError);
}

TEST(ShareRecords, ConfigValidation) {
  CorpusConfig cfg;
  cfg.min_sharers = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.min_sharers = 1;
  cfg.date_end = cfg.date_start;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(MinSharers, CountsDistinctUsers) {
  std::vector<ShareRecord> recs;
  for (const char* u : {"u1", "u2", "u3"}) recs.push_back({u, "a", 0, std::nullopt});
  for (int i = 0; i < 5; ++i) recs.push_back({"u1", "b", i, std::nullopt});
  const auto res = filter_min_sharers(recs, 2);
  EXPECT_EQ(res.retained_urls, (std::set<std::string>{"a"}));
  EXPECT_EQ(res.records.size(), 3u);
  EXPECT_TRUE(filter_min_sharers({}, 3).records.empty());
}

TEST(MinSharers, EveryRetainedUrlMeetsTheMinimum) {
  std::mt19937 gen(7);
  std::vector<ShareRecord> recs;
  for (int i = 0; i < 3000; ++i)
    recs.push_back({"u" + std::to_string(gen() % 40), "url" + std::to_string(gen() % 100), i, std::nullopt});
  const auto res = filter_min_sharers(recs, 25);
  const auto counts = distinct_sharer_counts(res.records);
  for (const auto& url : res.retained_urls) EXPECT_GE(counts.at(url), 25u);
  // Every event of a retained URL survives.
  std::size_t expected = 0;
  for (const auto& r : recs) expected += res.retained_urls.count(r.url);
  EXPECT_EQ(res.records.size(), expected);
}

TEST(Quotes, SpanRemovalAndIdentity) {
  EXPECT_EQ(strip_direct_quotes(R"(He said "the vote was rigged" on Monday.)"), "He said on Monday.");
  EXPECT_EQ(strip_direct_quotes("Plain text, no marks."), "Plain text, no marks.");
}

TEST(Quotes, HandTracedFixture) {
  const auto lines = test::read_lines(test::fixture("quotes.tsv"));
  ASSERT_EQ(lines.size(), 10u);
  for (const auto& line : lines) {
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos);
    const auto input = line.substr(0, tab);
    const auto out = strip_direct_quotes(input);
    EXPECT_EQ(out, line.substr(tab + 1)) << input;
    EXPECT_LE(out.size(), input.size());
  }
}

TEST(Articles, HeadlineAndDomainStrippingAndDedup) {
  const auto catalog = test::small_catalog();
  std::vector<ArticleDoc> raw = {
      {"https://main.com/a", "", "Big news today", "Big news today The council met at main.com on Friday.", std::nullopt},
      {"https://main.com/b", "", "Other headline", "The   council met at main.com on Friday.", std::nullopt},
      {"https://main.com/c", "", "", "", std::nullopt},
      {"https://main.com/d", "", "Other headline", "The council met at www.main.com on Friday.", std::nullopt},
  };
  ArticleLoadStats stats;
  const auto store = build_article_store(raw, catalog, {}, &stats);
  ASSERT_EQ(store.size(), 2u);
  const auto* a = store.find("main.com/a");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->headline, "Big news today");
  EXPECT_EQ(a->body, "The council met at on Friday.");
  EXPECT_EQ(a->domain, "main.com");
  const auto* b = store.find("main.com/b");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->headline, "Other headline");
  EXPECT_TRUE(b->body.empty());  // duplicate of a's body
  EXPECT_EQ(stats.skipped_empty, 2u);

  std::set<std::string> units;
  for (const auto& d : store.docs()) {
    for (const auto* u : {&d.headline, &d.body}) {
      if (!u->empty()) EXPECT_TRUE(units.insert(*u).second);
    }
  }
}

TEST(Articles, QuoteStripOnlyForReliableOutlets) {
  const auto catalog = test::small_catalog();
  std::vector<ArticleDoc> raw = {
      {"https://main.com/q", "", "Head", R"(He said "it was rigged" today.)", std::nullopt},
      {"https://fake.com/q", "", "Head2", R"(He said "it was rigged" again.)", std::nullopt},
  };
  ArticleOptions opt;
  opt.quote_strip = true;
  const auto store = build_article_store(raw, catalog, opt);
  EXPECT_EQ(store.find("main.com/q")->body, "He said today.");
  EXPECT_EQ(store.find("fake.com/q")->body, R"(He said "it was rigged" again.)");
}

TEST(Claims, KeepsOnlyFalseVerdictsOnce) {
  const auto dir = test::scratch_dir("claims");
  test::write_file(dir / "claims.jsonl",
                   R"({"claim_id":"1","text":"Vaccines cause autism.","verdict":"False"})"
                   "\n"
                   R"({"claim_id":"2","text":"Water is wet.","verdict":"True"})"
                   "\n"
                   R"({"claim_id":"3","text":"Vaccines  cause autism.","verdict":"Pants on Fire"})"
                   "\n"
                   R"({"claim_id":"4","text":"The moon is cheese.","verdict":"Not true"})"
                   "\n");
  ClaimLoadStats stats;
  const auto claims = load_claims(dir / "claims.jsonl", default_false_labels(), false, &stats);
  ASSERT_EQ(claims.size(), 2u);
  EXPECT_EQ(claims[0].claim_id, "1");
  EXPECT_EQ(claims[1].claim_id, "4");
  EXPECT_EQ(stats.not_false, 1u);
  EXPECT_EQ(stats.duplicates, 1u);
}

TEST(Catalog, FakeAndMedianSplit) {
  std::vector<DomainCatalogEntry> es;
  const double part[] = {-0.8, -0.2, 0.0, 0.3, 0.6};
  for (int i = 0; i < 5; ++i) es.push_back(test::reliable_entry("d" + std::to_string(i) + ".com", 0.1, 0.5, std::nullopt, part[i]));
  es.push_back(test::fake_entry("f.com"));
  es.back().partisanship = 0.0;
  DomainCatalog cat(es);
  // Median over all six domains {-0.8,-0.2,0,0,0.3,0.6} is 0.
  EXPECT_DOUBLE_EQ(cat.partisanship_median(), 0.0);
  EXPECT_EQ(cat.classify_url("d1.com/x").lean, Lean::liberal);
  EXPECT_EQ(cat.classify_url("d3.com/x").lean, Lean::conservative);
  EXPECT_EQ(cat.classify_url("f.com/x").kind, OutletKind::fake);
  EXPECT_EQ(cat.classify_url("unknown.org/x").kind, OutletKind::unknown);
}

TEST(Catalog, FiveDomainMedian) {
  std::vector<DomainCatalogEntry> es;
  const double part[] = {-0.8, -0.2, 0.0, 0.3, 0.6};
  for (int i = 0; i < 5; ++i) es.push_back(test::reliable_entry("d" + std::to_string(i) + ".com", 0.1, 0.5, std::nullopt, part[i]));
  DomainCatalog cat(es);
  EXPECT_DOUBLE_EQ(cat.partisanship_median(), 0.0);
  EXPECT_EQ(cat.classify_domain("d1.com").lean, Lean::liberal);
}

TEST(Catalog, MainstreamMatchesDirectZScore) {
  std::vector<DomainCatalogEntry> es;
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> low(0.05, 0.25);
  for (int i = 0; i < 20; ++i) {
    const bool high = i < 4;
    const bool popular = i % 2 == 0;
    es.push_back(test::reliable_entry("r" + std::to_string(i) + ".com", high ? 0.8 + 0.02 * i : low(gen),
                                      popular ? 0.05 : 0.3, popular ? std::optional<int>(100) : std::nullopt));
  }
  for (int i = 0; i < 5; ++i) es.push_back(test::fake_entry("f" + std::to_string(i) + ".com", low(gen)));
  DomainCatalog cat(es);

  double mean = 0;
  for (const auto& e : es) mean += e.political_score;
  mean /= es.size();
  double ss = 0;
  for (const auto& e : es) ss += (e.political_score - mean) * (e.political_score - mean);
  const double sd = std::sqrt(ss / (es.size() - 1));
  std::set<std::string> expected;
  for (const auto& e : es) {
    const double z = (e.political_score - mean) / sd;
    if (e.is_reliable && z > 1.0 && e.popularity_rank_share <= 0.10 && e.popularity_rank_visits &&
        *e.popularity_rank_visits <= 500)
      expected.insert(e.domain);
  }
  std::set<std::string> got;
  for (const auto& e : es)
    if (cat.classify_domain(e.domain).mainstream) got.insert(e.domain);
  EXPECT_EQ(expected.size(), 2u);
  EXPECT_EQ(got, expected);
}

TEST(Catalog, PartitionViolationsAreRejected) {
  auto bad = test::fake_entry("x.com");
  bad.is_reliable = true;
  EXPECT_THROW(DomainCatalog({bad}), DataError);
  auto untrusted = test::fake_entry("y.com");
  untrusted.is_trustworthy = true;
  EXPECT_THROW(DomainCatalog({untrusted}), DataError);
  auto lean = test::reliable_entry("z.com", 0.1, 0.1, 1, 1.5);
  EXPECT_THROW(DomainCatalog({lean}), DataError);
}

TEST(Catalog, LoadsCsv) {
  const auto dir = test::scratch_dir("catalog_csv");
  test::write_file(dir / "catalog.csv",
                   "domain,is_fake,is_trustworthy,political_score,pop_share_rank,pop_visit_rank,partisanship\n"
                   "a.com,false,true,0.5,0.01,20,-0.5\n"
                   "b.com,true,false,0.2,0.4,,0.7\n");
  const auto cat = DomainCatalog::load_csv(dir / "catalog.csv");
  ASSERT_EQ(cat.size(), 2u);
  EXPECT_TRUE(cat.find("a.com")->is_trustworthy);
  EXPECT_TRUE(cat.find("b.com")->is_fake);
  EXPECT_FALSE(cat.find("b.com")->popularity_rank_visits.has_value());
}
