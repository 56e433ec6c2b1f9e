#include "coshare/narrative/entities.hpp"

#include <algorithm>

#include "coshare/narrative/lexicon.hpp"

namespace coshare::narrative {

namespace {

bool all_caps(std::string_view s) {
  bool letter = false;
  for (char c : s) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') letter = true;
  }
  return letter;
}

bool title_word(const Token& t) {
  static const std::vector<std::string_view> words = {"president", "senator", "governor", "mayor", "judge",
                                                      "secretary", "speaker", "general", "representative"};
  std::string_view core = t.lower;
  if (core.ends_with('.')) core.remove_suffix(1);
  return is_title_abbreviation(core) || std::find(words.begin(), words.end(), core) != words.end();
}

bool name_token(const Token& t) {
  return t.capitalized && (t.tag == Tag::noun || t.tag == Tag::verb);
}

EntityMention make_mention(const std::vector<Token>& tokens, std::size_t b, std::size_t e) {
  EntityMention m;
  m.token_begin = b;
  m.token_end = e;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) {
      m.surface += ' ';
      m.normalized += ' ';
    }
    m.surface += tokens[i].text;
    m.normalized += strip_punctuation(tokens[i].lower);
  }
  return m;
}

}  // namespace

std::vector<EntityMention> detect_named_entities(const std::vector<Token>& tokens) {
  const std::size_t n = tokens.size();
  const bool title = is_title_case(tokens);
  std::vector<bool> taken(n, false);
  std::vector<EntityMention> out;

  // Gazetteer n-grams, longest first.
  for (std::size_t len = 3; len >= 1; --len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      bool free = true;
      std::string key;
      for (std::size_t k = i; k < i + len; ++k) {
        if (taken[k] || tokens[k].tag == Tag::punctuation) free = false;
        if (k > i) key += ' ';
        key += tokens[k].lower;
      }
      if (!free) continue;
      if (!(tokens[i].capitalized || all_caps(tokens[i].text))) continue;
      if (!in_gazetteer(key)) continue;
      for (std::size_t k = i; k < i + len; ++k) taken[k] = true;
      out.push_back(make_mention(tokens, i, i + len));
    }
  }

  if (!title) {
    // Index of the first word token (skips leading quotes).
    std::size_t first_word = 0;
    while (first_word < n && tokens[first_word].tag == Tag::punctuation) ++first_word;
    std::size_t i = 0;
    while (i < n) {
      if (taken[i] || !name_token(tokens[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < n && !taken[j] && name_token(tokens[j])) ++j;
      // Leading titles ("Dr.", "Senator") are not part of the name.
      while (i + 1 < j && title_word(tokens[i])) ++i;
      const bool lone_initial = j - i == 1 && i == first_word && !(j < n && taken[j]);
      if (!lone_initial) {
        for (std::size_t k = i; k < j; ++k) taken[k] = true;
        out.push_back(make_mention(tokens, i, j));
      }
      i = j;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EntityMention& a, const EntityMention& b) { return a.token_begin < b.token_begin; });
  // Merge a gazetteer hit with an adjacent capitalized run ("President Trump").
  std::vector<EntityMention> merged;
  for (auto& m : out) {
    if (!merged.empty() && merged.back().token_end == m.token_begin) {
      merged.back() = make_mention(tokens, merged.back().token_begin, m.token_end);
    } else {
      merged.push_back(std::move(m));
    }
  }
  return merged;
}

std::vector<EntityMention> detect_named_entities(std::string_view sentence) {
  return detect_named_entities(analyze(sentence));
}

std::vector<bool> named_mask(const std::vector<Token>& tokens, const std::vector<EntityMention>& mentions) {
  std::vector<bool> mask(tokens.size(), false);
  for (const auto& m : mentions)
    for (std::size_t i = m.token_begin; i < m.token_end && i < mask.size(); ++i) mask[i] = true;
  return mask;
}

}  // namespace coshare::narrative
