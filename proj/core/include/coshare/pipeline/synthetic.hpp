#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace coshare::pipeline {

/// Parameters of a synthetic corpus with known co-shared articles and
/// planted narrative overlap.
struct SyntheticSpec {
  std::size_t n_users = 2000;
  std::size_t n_fake_urls = 500;
  std::size_t n_reliable_urls = 5000;
  /// Users who all share the designated fake URLs and the designated
  /// co-shared reliable URLs.
  std::size_t clique_size = 50;
  /// Fraction of each article's labels drawn from the planted narratives.
  double planted_overlap_coshared = 0.022;
  double planted_overlap_control = 0.013;
  /// Pseudo-nouns used for background sentences in reliable articles.
  std::size_t vocab_size = 600;

  std::size_t n_coshared_articles = 100;
  std::size_t n_control_articles = 100;
  std::size_t labels_per_article = 400;
  std::size_t n_designated_fake = 2;
  /// Planted narratives; the first n_claim_planted are carried by false
  /// claims, the remainder by fake stories.
  std::size_t n_planted = 40;
  std::size_t n_claim_planted = 30;
  std::size_t planted_per_fake_story = 2;
  std::size_t fake_background_labels = 3000;
  std::size_t fake_story_sentences = 8;
  std::size_t n_background_claims = 300;

  std::size_t n_fake_domains = 20;
  std::size_t n_mainstream_domains = 12;
  std::size_t n_other_reliable_domains = 28;
  /// Users who never share fake URLs; control articles draw sharers here.
  double reliable_only_fraction = 0.3;
  std::size_t sharers_min = 6;
  std::size_t sharers_max = 12;
  int min_sharers = 5;

  /// Throws ConfigError when the parameters cannot produce a valid corpus.
  void validate() const;
};

/// What the generator planted, for checking pipeline output.
struct SyntheticTruth {
  std::vector<std::string> coshared_urls;  // canonical form
  std::vector<std::string> control_urls;
  std::vector<std::string> designated_fake_urls;
  std::vector<std::string> planted_labels;  // rendered label strings
  std::vector<std::string> claim_labels;    // planted labels carried by claims
  double realized_overlap_coshared = 0.0;   // planted labels / all labels in the group
  double realized_overlap_control = 0.0;
};

struct SyntheticOutput {
  std::filesystem::path shares;
  std::filesystem::path articles;
  std::filesystem::path claims;
  std::filesystem::path catalog;
  std::filesystem::path config;  // pipeline config pointing at the files above
  std::filesystem::path truth;   // truth.json
  SyntheticTruth truth_data;
};

/// Writes shares.jsonl, articles.jsonl, claims.jsonl, catalog.csv, a
/// pipeline config (synthetic.conf) and truth.json into `dir`.
/// Deterministic in (spec, seed).
SyntheticOutput generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed, const std::filesystem::path& dir);

/// Transitive verbs used by the sentence templates: lexicon verbs whose
/// past form maps back to the lemma unambiguously.
const std::vector<std::string>& template_verbs();

/// Invented nouns that the tagger reads as plain, unnamed nouns and the
/// lemmatizer leaves unchanged, in a fixed order.
std::vector<std::string> pseudo_nouns(std::size_t count);

}  // namespace coshare::pipeline
