#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <iostream>
#include <set>

#include "coshare/common/error.hpp"
#include "coshare/common/format.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/narrative/clustering.hpp"
#include "coshare/narrative/embeddings.hpp"
#include "coshare/narrative/entities.hpp"
#include "coshare/narrative/lexicon.hpp"
#include "coshare/narrative/roles.hpp"
#include "coshare/narrative/text.hpp"
#include "unit/test_support.hpp"

using namespace coshare;
using namespace coshare::narrative;

namespace {

std::vector<std::string> texts_of(const std::vector<Sentence>& s) {
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(x.text);
  return out;
}

std::set<std::string> rendered(std::string_view sentence) {
  std::set<std::string> out;
  for (const auto& t : extract_role_tuples(sentence))
    for (auto& r : t.render()) out.insert(r);
  return out;
}

std::vector<std::string> split_bar(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(" | ", start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 3;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- sentences

TEST(Sentences, TerminatorsAndGuards) {
  EXPECT_EQ(split_sentences("A. B? C!").size(), 3u);
  EXPECT_EQ(texts_of(split_sentences("Dr. Smith arrived. He spoke.")),
            (std::vector<std::string>{"Dr. Smith arrived.", "He spoke."}));
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_TRUE(split_sentences("   ").empty());
}

TEST(Sentences, OffsetsPointIntoSource) {
  const std::string text = "  First one. \"Second one!\" Third?";
  const auto s = split_sentences(text);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& x : s) EXPECT_EQ(text.substr(x.begin, x.end - x.begin), x.text);
  EXPECT_EQ(s[1].text, "\"Second one!\"");
}

TEST(Sentences, HandLabeledFixture) {
  std::vector<std::vector<std::string>> docs(1);
  for (const auto& line : test::read_lines(test::fixture("sentences.txt"))) {
    if (line.starts_with('#')) continue;
    if (line.empty()) {
      if (!docs.back().empty()) docs.emplace_back();
      continue;
    }
    docs.back().push_back(line);
  }
  std::size_t total = 0;
  for (const auto& doc : docs) {
    std::string text;
    for (const auto& s : doc) text += (text.empty() ? "" : " ") + s;
    EXPECT_EQ(texts_of(split_sentences(text)), doc) << text;
    total += doc.size();
  }
  EXPECT_EQ(total, 50u);
}

// ---------------------------------------------------------------- tokens

TEST(Tokens, CliticsAbbreviationsNumbers) {
  const auto t = analyze("Trump's lawyers didn't see 100,000 U.S. ballots.");
  std::vector<std::string> surface;
  for (const auto& x : t) surface.push_back(x.text);
  EXPECT_EQ(surface, (std::vector<std::string>{"Trump", "'s", "lawyers", "did", "n't", "see", "100,000", "U.S.",
                                               "ballots", "."}));
  EXPECT_EQ(t[1].tag, Tag::possessive);
  EXPECT_EQ(t[3].tag, Tag::auxiliary);
  EXPECT_EQ(t[4].tag, Tag::negation);
  EXPECT_EQ(t[5].tag, Tag::verb);
  EXPECT_EQ(t[6].tag, Tag::number);
}

TEST(Lexicon, Lemmatizer) {
  EXPECT_EQ(verb_lemma("caused"), "cause");
  EXPECT_EQ(verb_lemma("stole"), "steal");
  EXPECT_EQ(verb_lemma("maimed"), "maim");
  EXPECT_EQ(verb_lemma("stopping"), "stop");
  EXPECT_EQ(noun_lemma("vaccines"), "vaccine");
  EXPECT_EQ(noun_lemma("shingles"), "shingle");
  EXPECT_EQ(noun_lemma("children"), "child");
  EXPECT_EQ(noun_lemma("people"), "people");
  EXPECT_EQ(noun_lemma("virus"), "virus");
  EXPECT_TRUE(is_past_participle("killed"));
  EXPECT_TRUE(is_past_participle("stolen"));
  EXPECT_FALSE(is_past_participle("kills"));
}

// ---------------------------------------------------------------- roles

TEST(Roles, ChainedCausalSentence) {
  const auto r = rendered("Zostavax vaccine caused multiple people to develop shingles.");
  EXPECT_TRUE(r.contains("vaccine cause shingles"));
  EXPECT_TRUE(r.contains("people develop shingles"));
  EXPECT_TRUE(r.contains("vaccine cause people develop shingles"));
}

TEST(Roles, Negation) {
  const auto tuples = extract_role_tuples("Trump did not win the election.");
  ASSERT_EQ(tuples.size(), 1u);
  const auto& t = tuples[0];
  EXPECT_EQ(t.agent.normalized(), "trump");
  EXPECT_TRUE(t.agent.is_named);
  EXPECT_EQ(t.verb, "win");
  EXPECT_TRUE(t.negated);
  EXPECT_EQ(t.patient.normalized(), "election");

  RoleTuple positive = t;
  positive.negated = false;
  ASSERT_EQ(t.render().size(), 1u);
  EXPECT_NE(t.render()[0], positive.render()[0]);
  EXPECT_EQ(t.render()[0], "trump not win election");
}

TEST(Roles, PassiveSwapsAgent) {
  const auto tuples = extract_role_tuples("Over 100,000 U.S. children are maimed or killed by vaccines each year.");
  ASSERT_EQ(tuples.size(), 2u);
  std::set<std::string> verbs;
  for (const auto& t : tuples) {
    EXPECT_EQ(t.agent.head, "vaccines");
    EXPECT_EQ(t.patient.head, "children");
    EXPECT_FALSE(t.negated);
    verbs.insert(t.verb);
  }
  EXPECT_EQ(verbs, (std::set<std::string>{"maim", "kill"}));
}

TEST(Roles, NoVerbAndIncompleteTuples) {
  EXPECT_TRUE(extract_role_tuples("The big red ballot box.").empty());
  EXPECT_TRUE(extract_role_tuples("").empty());
  // Agent-only tuple exists but renders nothing.
  const auto tuples = extract_role_tuples("The senator resigned.");
  ASSERT_EQ(tuples.size(), 1u);
  EXPECT_FALSE(tuples[0].complete());
  EXPECT_TRUE(tuples[0].render().empty());
}

TEST(Roles, PronounFillersAreDropped) {
  const auto tuples = extract_role_tuples("It caused them harm.");
  for (const auto& t : tuples) {
    EXPECT_TRUE(t.agent.empty());
    for (const auto& r : t.render()) EXPECT_EQ(r.find("it "), std::string::npos);
  }
}

TEST(Roles, HandLabeledFixtureRecall) {
  std::size_t gold = 0;
  std::size_t hit = 0;
  for (const auto& line : test::read_lines(test::fixture("tuples.tsv"))) {
    if (line.empty() || line.starts_with('#')) continue;
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const auto got = rendered(line.substr(0, tab));
    for (const auto& g : split_bar(line.substr(tab + 1))) {
      ++gold;
      if (got.contains(g)) ++hit;
      else std::cout << "  missed: " << g << '\n';
    }
  }
  EXPECT_GE(gold, 25u);
  EXPECT_GE(static_cast<double>(hit) / static_cast<double>(gold), 0.8);
}

// ---------------------------------------------------------------- entities

TEST(Entities, CapitalizedRunAndInitialGuard) {
  const auto m = detect_named_entities("Nancy Pelosi blocked the vote.");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].normalized, "nancy pelosi");
  EXPECT_TRUE(m[0].is_named);
  EXPECT_TRUE(detect_named_entities("Vaccines cause autism.").empty());
}

TEST(Entities, HandLabeledFixtureRecall) {
  std::size_t gold = 0;
  std::size_t hit = 0;
  for (const auto& line : test::read_lines(test::fixture("entities.tsv"))) {
    if (line.empty() || line.starts_with('#')) continue;
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    std::set<std::string> got;
    for (const auto& m : detect_named_entities(line.substr(0, tab))) got.insert(m.normalized);
    for (const auto& g : split_bar(line.substr(tab + 1))) {
      ++gold;
      hit += got.contains(g) ? 1 : 0;
    }
  }
  EXPECT_EQ(gold, 30u);
  EXPECT_GE(static_cast<double>(hit) / static_cast<double>(gold), 0.8);
}

// ---------------------------------------------------------------- embeddings

namespace {

std::vector<std::vector<std::string>> toy_corpus() {
  return {
      {"the", "vaccine", "causes", "harm", "in", "children"},
      {"the", "vaccines", "cause", "harm", "in", "children"},
      {"a", "vaccine", "dose", "causes", "fever"},
      {"a", "vaccines", "dose", "causes", "fever"},
      {"the", "ballot", "was", "counted", "by", "officials"},
      {"a", "ballot", "box", "was", "counted", "twice"},
      {"officials", "counted", "the", "ballot", "again"},
  };
}

// Direct PPMI rows from plain maps, independent of the library code.
std::map<std::string, std::map<std::string, double>> direct_ppmi(const std::vector<std::vector<std::string>>& c,
                                                                 int window) {
  std::map<std::string, std::map<std::string, double>> counts;
  for (const auto& s : c)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size() && j <= i + static_cast<std::size_t>(window); ++j) {
        counts[s[i]][s[j]] += 1;
        counts[s[j]][s[i]] += 1;
      }
  std::map<std::string, double> row;
  double total = 0;
  for (const auto& [a, m] : counts)
    for (const auto& [b, x] : m) {
      row[a] += x;
      total += x;
    }
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& [a, m] : counts)
    for (const auto& [b, x] : m) {
      const double v = std::log(x * total / (row[a] * row[b]));
      if (v > 0) out[a][b] = v;
    }
  return out;
}

double map_cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [k, v] : a) {
    na += v * v;
    if (auto it = b.find(k); it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  return dot / std::sqrt(na * nb);
}

}  // namespace

TEST(Embeddings, PpmiMatchesDirectComputation) {
  const auto corpus = toy_corpus();
  const auto vocab = build_vocabulary(corpus);
  const Eigen::MatrixXd m = Eigen::MatrixXd(ppmi(cooccurrence_counts(corpus, vocab, 2)));
  const auto oracle = direct_ppmi(corpus, 2);
  for (std::size_t i = 0; i < vocab.size(); ++i)
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      double expected = 0;
      if (auto r = oracle.find(vocab[i]); r != oracle.end())
        if (auto c = r->second.find(vocab[j]); c != r->second.end()) expected = c->second;
      EXPECT_NEAR(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), expected, 1e-12);
    }
}

TEST(Embeddings, SharedContextsGiveHigherCosine) {
  const auto corpus = toy_corpus();
  const auto oracle = direct_ppmi(corpus, 2);
  // The oracle itself must order the pairs as expected.
  ASSERT_GT(map_cosine(oracle.at("vaccine"), oracle.at("vaccines")),
            map_cosine(oracle.at("vaccine"), oracle.at("ballot")));
  EmbeddingOptions opt;
  opt.d = 8;
  opt.window = 2;
  opt.seed = 3;
  const auto model = train_embeddings(corpus, opt);
  EXPECT_GT(model.cosine("vaccine", "vaccines"), model.cosine("vaccine", "ballot"));
  for (Eigen::Index i = 0; i < model.vectors().rows(); ++i) {
    const double n = model.vectors().row(i).norm();
    EXPECT_TRUE(n == 0.0 || std::abs(n - 1.0) < 1e-12);
  }
}

TEST(Embeddings, SingleTokenCorpus) {
  EmbeddingOptions opt;
  opt.d = 50;
  const auto model = train_embeddings(std::vector<std::string>{"Vaccines."}, opt);
  ASSERT_EQ(model.size(), 1u);
  EXPECT_EQ(model.vocabulary()[0], "vaccines");
  EXPECT_EQ(model.d(), 1);
  EXPECT_EQ(model.vectors().norm(), 0.0);
  EXPECT_TRUE(model.vectors().allFinite());
  EXPECT_THROW(train_embeddings(std::vector<std::string>{""}, opt), DataError);
}

TEST(Embeddings, ReconstructionErrorMatchesExactSvd) {
  const auto corpus = toy_corpus();
  const auto vocab = build_vocabulary(corpus);
  const auto sparse = ppmi(cooccurrence_counts(corpus, vocab, 2));
  const Eigen::MatrixXd dense(sparse);
  Eigen::JacobiSVD<Eigen::MatrixXd> exact(dense);
  const Eigen::VectorXd sv = exact.singularValues();
  double previous = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= static_cast<int>(vocab.size()); ++d) {
    const auto svd = truncated_svd(sparse, d, 11, 4, 10);
    const Eigen::MatrixXd approx = svd.u * svd.s.asDiagonal() * svd.v.transpose();
    const double err = (dense - approx).norm();
    const double oracle = std::sqrt(sv.tail(sv.size() - d).squaredNorm());
    EXPECT_NEAR(err, oracle, 1e-8 * std::max(1.0, dense.norm())) << "d=" << d;
    EXPECT_LE(err, previous + 1e-10) << "d=" << d;
    previous = err;
  }
}

TEST(Embeddings, DeterministicAndRoundTrip) {
  EmbeddingOptions opt;
  opt.d = 5;
  opt.window = 2;
  opt.seed = 9;
  const auto a = train_embeddings(toy_corpus(), opt);
  const auto b = train_embeddings(toy_corpus(), opt);
  EXPECT_EQ(a.vectors(), b.vectors());
  const auto dir = test::scratch_dir("embeddings");
  save_embeddings(a, dir / "emb", opt);
  const auto c = load_embeddings(dir / "emb");
  EXPECT_EQ(c.vocabulary(), a.vocabulary());
  EXPECT_EQ(c.vectors(), a.vectors());
}

// ---------------------------------------------------------------- clustering

namespace {

double sse(const Eigen::MatrixXd& pts, const std::vector<int>& assign, int k) {
  double total = 0;
  for (int c = 0; c < k; ++c) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(pts.cols());
    int n = 0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      if (assign[static_cast<std::size_t>(i)] == c) {
        mean += pts.row(i);
        ++n;
      }
    if (n == 0) return std::numeric_limits<double>::infinity();
    mean /= n;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      if (assign[static_cast<std::size_t>(i)] == c) total += (pts.row(i) - mean).squaredNorm();
  }
  return total;
}

// Optimal partition by enumerating every assignment of points to k labels.
std::vector<int> brute_force_partition(const Eigen::MatrixXd& pts, int k) {
  const auto n = static_cast<std::size_t>(pts.rows());
  std::vector<int> assign(n, 0);
  std::vector<int> best;
  double best_sse = std::numeric_limits<double>::infinity();
  while (true) {
    const double s = sse(pts, assign, k);
    if (s < best_sse) {
      best_sse = s;
      best = assign;
    }
    std::size_t i = 0;
    while (i < n && ++assign[i] == k) assign[i++] = 0;
    if (i == n) break;
  }
  return best;
}

// Same-cluster relation, independent of label numbering.
std::set<std::pair<std::size_t, std::size_t>> together(const std::vector<int>& a) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j]) out.emplace(i, j);
  return out;
}

}  // namespace

TEST(KMeans, WellSeparatedGroupsMatchBruteForce) {
  Eigen::MatrixXd pts(10, 2);
  pts << 0, 0, 0.2, 0.1, 0.1, 0.3, 10, 10, 10.2, 9.9, 9.8, 10.1, 10.1, 10.3, -10, 5, -9.8, 5.2, -10.1, 4.9;
  const auto oracle = brute_force_partition(pts, 3);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto got = kmeans(pts, 3, seed);
    std::vector<int> assign(got.assignment.begin(), got.assignment.end());
    EXPECT_EQ(together(assign), together(oracle)) << "seed " << seed;
  }
}

TEST(KMeans, KTooLargeAndIdentity) {
  Eigen::MatrixXd pts(3, 1);
  pts << 0, 1, 2;
  EXPECT_THROW(kmeans(pts, 4, 0), ConfigError);
  const auto id = kmeans(pts, 3, 0);
  EXPECT_EQ(id.assignment, (std::vector<std::uint32_t>{0, 1, 2}));
}

namespace {

std::vector<Phrase> phrases_of(const std::vector<std::string>& sentences) {
  std::vector<RoleTuple> tuples;
  for (const auto& s : sentences) {
    auto t = extract_role_tuples(s);
    tuples.insert(tuples.end(), t.begin(), t.end());
  }
  return role_phrases(tuples);
}

const std::vector<std::string>& cluster_sentences() {
  static const std::vector<std::string> s = {
      "The vaccine caused the fever.", "The vaccine caused the rash.",     "The vaccines harmed the children.",
      "The ballot reached the office.", "The ballots reached the clerk.",  "The clerk counted the ballots.",
      "The virus infected the children.", "The doctors treated the fever.", "The vaccine caused the fever.",
  };
  return s;
}

EmbeddingModel cluster_embeddings() {
  EmbeddingOptions opt;
  opt.d = 6;
  opt.window = 3;
  opt.seed = 5;
  return train_embeddings(cluster_sentences(), opt);
}

}  // namespace

TEST(Clustering, SingleClusterTakesMostFrequentPhrase) {
  const auto phrases = phrases_of(cluster_sentences());
  const auto model = cluster_embeddings();
  std::map<std::string, int> freq;
  for (const auto& p : phrases) ++freq[p.normalized()];
  std::string top;
  int best = 0;
  for (const auto& [k, v] : freq)
    if (v > best) {
      best = v;
      top = k;
    }
  const auto c = cluster_roles(phrases, model, 1, 7);
  ASSERT_EQ(c.k(), 1);
  EXPECT_EQ(c.labels()[0], top);
}

TEST(Clustering, DeterministicProvenanceAndErrors) {
  const auto phrases = phrases_of(cluster_sentences());
  const auto model = cluster_embeddings();
  const auto a = cluster_roles(phrases, model, 3, 21);
  const auto b = cluster_roles(phrases, model, 3, 21);
  EXPECT_EQ(a.centroids(), b.centroids());
  EXPECT_EQ(a.labels(), b.labels());
  // Every label is a member of its own cluster; every cluster has members.
  std::vector<int> members(3, 0);
  for (const auto& [phrase, c] : a.membership()) {
    ++members[c];
    (void)phrase;
  }
  for (int c = 0; c < 3; ++c) {
    EXPECT_GT(members[static_cast<std::size_t>(c)], 0);
    ASSERT_TRUE(a.membership().contains(a.labels()[static_cast<std::size_t>(c)]));
    EXPECT_EQ(a.membership().at(a.labels()[static_cast<std::size_t>(c)]), static_cast<std::uint32_t>(c));
  }
  const auto distinct = distinct_clusterable(phrases);
  EXPECT_THROW(cluster_roles(phrases, model, static_cast<int>(distinct) + 1, 0), ConfigError);

  const auto dir = test::scratch_dir("clusters");
  save_clusters(a, dir / "low");
  const auto c = load_clusters(dir / "low");
  EXPECT_EQ(c.labels(), a.labels());
  EXPECT_EQ(c.membership(), a.membership());
  EXPECT_EQ(c.centroids(), a.centroids());
}

// ---------------------------------------------------------------- assembly

TEST(Assembly, LowAndHighDimensionalLabels) {
  const auto tuples = extract_text_tuples("The filing claims that Zostavax caused multiple people to develop shingles.");
  const auto low = ClusterModel::from_assignment({{"zostavax", "vaccine"}});
  const ClusterModel high;
  const auto labels = assemble_narratives(tuples, low, high);
  std::set<std::string> lo;
  std::set<std::string> hi;
  for (const auto& l : labels) {
    (l.dimensionality == Dimensionality::low ? lo : hi).insert(l.text);
    std::string joined;
    for (const auto& c : l.components) joined += (joined.empty() ? "" : " ") + c;
    EXPECT_EQ(joined, l.text);
  }
  EXPECT_TRUE(lo.contains("vaccine cause shingle"));
  EXPECT_TRUE(hi.contains("zostavax cause multiple people develop shingle"));
  EXPECT_FALSE(hi.contains("vaccine cause shingle"));
}

TEST(Assembly, VerbPassthroughDedupAndCompleteness) {
  const std::string text =
      "Trump did not win the election. Trump did not win the election. The senator resigned. "
      "Democrats stole the election.";
  const auto tuples = extract_text_tuples(text);
  const ClusterModel identity;
  const auto labels = assemble_narratives(tuples, identity, Dimensionality::high);
  std::vector<std::string> texts;
  for (const auto& l : labels) texts.push_back(l.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"trump not win election", "democrats steal election"}));

  // Verbs appear unchanged: the multiset of complete-tuple verbs equals the
  // verbs seen in the emitted labels before dedup.
  std::multiset<std::string> source;
  std::multiset<std::string> emitted;
  for (const auto& t : tuples) {
    if (!t.complete()) continue;
    source.insert(t.negated ? "not " + t.verb : t.verb);
    for (const auto& parts : label_components(t, [](const Phrase& p) { return p.normalized(); }))
      for (const auto& c : parts)
        if (c == t.verb || c == "not " + t.verb) emitted.insert(c);
  }
  EXPECT_EQ(source, emitted);
}

TEST(Assembly, NamedEntitiesBypassCentroids) {
  const auto phrases = phrases_of(cluster_sentences());
  const auto model = cluster_embeddings();
  const auto clusters = cluster_roles(phrases, model, 2, 4);
  const auto tuples = extract_role_tuples("Nancy Pelosi blocked the vaccine.");
  const auto labels = assemble_narratives(tuples, clusters, Dimensionality::low, &model);
  ASSERT_FALSE(labels.empty());
  EXPECT_EQ(labels[0].components.front(), "nancy pelosi");
  const auto& cluster_labels = clusters.labels();
  EXPECT_NE(std::find(cluster_labels.begin(), cluster_labels.end(), labels[0].components.back()),
            cluster_labels.end());
}
