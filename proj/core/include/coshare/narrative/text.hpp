#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace coshare::narrative {

struct Sentence {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

/// Splits on . ! ? (with trailing closers), guarding titles ("Dr."),
/// general abbreviations ("U.S.", "etc.") unless a sentence starter follows,
/// name initials ("John F. Kennedy") and decimals.
std::vector<Sentence> split_sentences(std::string_view text);

enum class Tag {
  determiner,
  preposition,
  auxiliary,
  modal,
  negation,
  conjunction,
  complementizer,
  pronoun,
  adverb,
  to,
  possessive,  // 's
  number,
  punctuation,
  verb,
  noun,
};

struct Token {
  std::string text;   // surface
  std::string lower;
  std::string lemma;  // verb lemma for verbs, aux lemma for auxiliaries, noun lemma otherwise
  Tag tag = Tag::noun;
  std::size_t begin = 0;  // byte offsets into the sentence
  std::size_t end = 0;
  bool capitalized = false;
};

/// Whitespace/punctuation tokenizer. Splits clitics ("didn't" -> "did" "n't",
/// "Trump's" -> "Trump" "'s"), keeps internal periods and commas of
/// abbreviations and numbers ("U.S.", "100,000").
std::vector<Token> tokenize(std::string_view sentence);

/// Assigns tags and lemmas in place using the lexicon and local context.
void tag_tokens(std::vector<Token>& tokens);

/// tokenize + tag_tokens.
std::vector<Token> analyze(std::string_view sentence);

/// True when most longer words are capitalized (headline style), which makes
/// capitalization useless as an entity cue.
bool is_title_case(const std::vector<Token>& tokens);

/// Lowercase, punctuation removed ("U.S." -> "us", "covid-19" -> "covid19").
std::string strip_punctuation(std::string_view lower);

}  // namespace coshare::narrative
