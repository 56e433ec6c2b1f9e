#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/narrative/entities.hpp"
#include "coshare/narrative/text.hpp"

namespace coshare::narrative {

/// A noun-phrase role filler.
struct Phrase {
  std::string surface;
  std::vector<std::string> tokens;  // lowercase content tokens, punctuation removed
  std::vector<std::string> lemmas;  // normalized content tokens (names are not lemmatized)
  std::string head;                 // lowercase surface of the head noun
  bool is_named = false;

  [[nodiscard]] bool empty() const { return lemmas.empty(); }
  /// Lemmas joined by single spaces; the key used for clustering.
  [[nodiscard]] std::string normalized() const;
  /// Head word, or the full normalized form for names.
  [[nodiscard]] std::string render() const;
};

struct Extension {
  std::string verb;
  bool negated = false;
  Phrase patient;
};

struct RoleTuple {
  Phrase agent;
  std::string verb;  // lemma
  bool negated = false;
  Phrase patient;
  std::vector<Extension> extensions;  // "caused X to develop Y" -> (develop, Y)
  std::size_t sentence_id = 0;

  /// Has a patient or an extension (agent-only tuples carry no narrative).
  [[nodiscard]] bool complete() const;
  /// Label strings with phrases rendered by head word: the base triple
  /// (with the last patient of a chain), each chain link, and the full chain.
  [[nodiscard]] std::vector<std::string> render() const;
};

/// Component sequences for every label a tuple yields, with phrases mapped
/// through `label_of`. Negated verbs become "not <verb>". Empty phrases are
/// skipped; sequences without an object are dropped.
std::vector<std::vector<std::string>> label_components(
    const RoleTuple& tuple, const std::function<std::string(const Phrase&)>& label_of);

std::vector<RoleTuple> extract_role_tuples(const std::vector<Token>& tokens, std::size_t sentence_id = 0);
std::vector<RoleTuple> extract_role_tuples(std::string_view sentence, std::size_t sentence_id = 0);

/// Every non-empty agent, patient and extension patient.
std::vector<Phrase> role_phrases(const std::vector<RoleTuple>& tuples);

}  // namespace coshare::narrative
