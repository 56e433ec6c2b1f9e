#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coshare/narrative/text.hpp"

namespace coshare::narrative {

struct EntityMention {
  std::string surface;
  bool is_named = true;
  std::string normalized;  // lowercase tokens, punctuation removed, space-joined
  std::size_t token_begin = 0;
  std::size_t token_end = 0;  // exclusive
};

/// Maximal runs of capitalized nouns (a lone sentence-initial word does not
/// count) plus gazetteer hits. In headline-style text only gazetteer hits
/// are used.
std::vector<EntityMention> detect_named_entities(const std::vector<Token>& tokens);
std::vector<EntityMention> detect_named_entities(std::string_view sentence);

/// Per-token flag: token lies inside a mention.
std::vector<bool> named_mask(const std::vector<Token>& tokens, const std::vector<EntityMention>& mentions);

}  // namespace coshare::narrative
