#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coshare::narrative {

enum class WordClass {
  determiner,
  preposition,
  auxiliary,  // forms of be/have/do
  modal,
  negation,
  conjunction,
  complementizer,
  pronoun,
  adverb,
  to,
  other,
};

/// Closed-class lookup on a lowercased token.
WordClass closed_class(std::string_view lower);

/// Base form if `lower` is an inflection (or the base) of a verb in the
/// bundled lexicon.
std::optional<std::string> verb_lemma(std::string_view lower);

bool is_verb_base(std::string_view lower);

/// True for past participles ("killed", "taken", "stolen").
bool is_past_participle(std::string_view lower);

/// Simple past of a lexicon verb ("cause" -> "caused", "steal" -> "stole").
std::string verb_past(std::string_view base);

/// Singular form of a noun: irregular table, then suffix rules.
std::string noun_lemma(std::string_view lower);

/// Lemma of an auxiliary form ("was" -> "be", "did" -> "do", "has" -> "have").
std::string auxiliary_lemma(std::string_view lower);

bool is_be_form(std::string_view lower);

/// Abbreviations that never end a sentence ("Dr.", "Mr.").
bool is_title_abbreviation(std::string_view lower_without_dot);

/// Abbreviations that end a sentence only when a sentence starter follows
/// ("U.S.", "etc.", "Inc.").
bool is_general_abbreviation(std::string_view lower_without_dot);

/// Function words that commonly open a sentence ("the", "he", "but").
bool is_sentence_starter(std::string_view lower);

/// Bundled list of person, organization and place names (lowercase; multi-word
/// entries separated by single spaces).
bool in_gazetteer(std::string_view lower);

/// Every base verb in the lexicon, sorted.
const std::vector<std::string>& verb_lexicon();

}  // namespace coshare::narrative
