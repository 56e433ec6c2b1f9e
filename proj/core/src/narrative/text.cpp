#include "coshare/narrative/text.hpp"

#include <cctype>

#include "coshare/narrative/lexicon.hpp"

namespace coshare::narrative {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Length of a closing quote/bracket at i (ASCII or UTF-8 ” ’ »), 0 if none.
std::size_t closer_at(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    const auto d = static_cast<unsigned char>(s[i + 2]);
    if (d == 0x9D || d == 0x99) return 3;
  }
  if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xBB) return 2;
  return 0;
}

// Length of an opening quote/bracket at i, 0 if none.
std::size_t opener_at(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (c == '"' || c == '\'' || c == '(' || c == '[') return 1;
  if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    const auto d = static_cast<unsigned char>(s[i + 2]);
    if (d == 0x9C || d == 0x98 || d == 0x9E) return 3;
  }
  if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xAB) return 2;
  return 0;
}

std::string_view word_before(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !is_space(text[b - 1])) --b;
  auto w = text.substr(b, dot - b);
  while (!w.empty() && !is_alpha(w.front()) && !is_digit(w.front())) w.remove_prefix(1);
  return w;
}

std::string_view word_at(std::string_view text, std::size_t pos) {
  std::size_t e = pos;
  while (e < text.size() && !is_space(text[e])) ++e;
  auto w = text.substr(pos, e - pos);
  while (!w.empty() && !is_alpha(w.front()) && !is_digit(w.front())) w.remove_prefix(1);
  while (!w.empty() && !is_alpha(w.back()) && !is_digit(w.back())) w.remove_suffix(1);
  return w;
}

std::string_view previous_word(std::string_view text, std::size_t word_begin) {
  std::size_t e = word_begin;
  while (e > 0 && is_space(text[e - 1])) --e;
  std::size_t b = e;
  while (b > 0 && !is_space(text[b - 1])) --b;
  auto w = text.substr(b, e - b);
  while (!w.empty() && !is_alpha(w.front())) w.remove_prefix(1);
  return w;
}

bool is_boundary(std::string_view text, std::size_t term_begin, std::size_t term_len, std::size_t next) {
  if (next >= text.size()) return true;
  const char n = text[next];
  const bool starts_ok = is_upper(n) || is_digit(n) || opener_at(text, next) > 0 ||
                         static_cast<unsigned char>(n) >= 0x80;
  if (!starts_ok) return false;
  if (text[term_begin] != '.' || term_len != 1) return true;

  const auto word = word_before(text, term_begin);
  if (word.empty()) return true;
  const auto lw = lower_ascii(word);
  if (is_title_abbreviation(lw)) return false;
  const auto next_word = lower_ascii(word_at(text, next));
  if (word.size() == 1 && is_upper(word[0])) {
    // Initial inside a name ("John F. Kennedy").
    const std::size_t word_begin = term_begin - word.size();
    const auto prev = previous_word(text, word_begin);
    if (!prev.empty() && is_upper(prev[0]) && is_upper(text[next])) return false;
    return true;
  }
  const bool dotted = lw.find('.') != std::string::npos;
  if (is_general_abbreviation(lw) || dotted) return is_sentence_starter(next_word);
  return true;
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    if (e > b) out.push_back({std::string(text.substr(b, e - b)), b, e});
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    const std::size_t term_begin = i;
    std::size_t j = i;
    while (j < text.size() && is_terminator(text[j])) ++j;
    const std::size_t term_len = j - term_begin;
    while (j < text.size()) {
      const auto c = closer_at(text, j);
      if (c == 0) break;
      j += c;
    }
    if (j < text.size() && !is_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t next = j;
    while (next < text.size() && is_space(text[next])) ++next;
    if (is_boundary(text, term_begin, term_len, next)) {
      emit(start, j);
      start = next;
    }
    i = j;
  }
  emit(start, text.size());
  return out;
}

namespace {

bool keeps_final_dot(std::string_view core) {
  if (core.empty()) return false;
  const auto lw = lower_ascii(core);
  if (core.size() == 1 && is_upper(core[0])) return true;
  if (is_title_abbreviation(lw) || is_general_abbreviation(lw)) return true;
  // Dotted acronyms such as "U.S" (the final dot is the one being considered).
  if (lw.find('.') != std::string::npos) {
    for (char c : lw)
      if (c != '.' && !is_alpha(c)) return false;
    return true;
  }
  return false;
}

void push(std::vector<Token>& out, std::string_view sentence, std::size_t b, std::size_t e) {
  if (e <= b) return;
  Token t;
  t.text = std::string(sentence.substr(b, e - b));
  t.begin = b;
  t.end = e;
  out.push_back(std::move(t));
}

bool is_dash_at(std::string_view s, std::size_t i, std::size_t& len) {
  if (s.compare(i, 2, "--") == 0) {
    len = 2;
    return true;
  }
  if (static_cast<unsigned char>(s[i]) == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    const auto d = static_cast<unsigned char>(s[i + 2]);
    if (d == 0x93 || d == 0x94) {
      len = 3;
      return true;
    }
  }
  return false;
}

void tokenize_chunk(std::vector<Token>& out, std::string_view s, std::size_t b, std::size_t e) {
  // Leading openers.
  while (b < e) {
    const auto n = opener_at(s, b);
    if (n == 0) break;
    push(out, s, b, b + n);
    b += n;
  }
  // Trailing punctuation, collected in reverse.
  std::vector<std::pair<std::size_t, std::size_t>> trailing;
  while (e > b) {
    const char c = s[e - 1];
    std::size_t n = 0;
    if (c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')' || c == ']' || c == '"') n = 1;
    else if (c == '\'' && !(e >= b + 2 && (s[e - 2] == 's' || s[e - 2] == 'S'))) n = 1;
    else if (e >= b + 3 && closer_at(s, e - 3) == 3) n = 3;
    else if (e >= b + 2 && closer_at(s, e - 2) == 2) n = 2;
    else if (c == '.') {
      if (keeps_final_dot(s.substr(b, e - 1 - b))) break;
      n = 1;
    }
    if (n == 0) break;
    trailing.emplace_back(e - n, e);
    e -= n;
  }
  // Dashes inside the chunk split it.
  std::size_t piece = b;
  for (std::size_t i = b; i < e;) {
    std::size_t len = 0;
    if (is_dash_at(s, i, len)) {
      tokenize_chunk(out, s, piece, i);
      push(out, s, i, i + len);
      i += len;
      piece = i;
      continue;
    }
    ++i;
  }
  if (piece != b) {
    tokenize_chunk(out, s, piece, e);
  } else if (e > b) {
    // Clitics.
    const auto core = s.substr(b, e - b);
    const auto lw = lower_ascii(core);
    std::size_t split = std::string::npos;
    if (lw.size() > 3 && lw.ends_with("n't")) split = lw.size() - 3;
    else if (lw.size() > 5 && lw.ends_with("n\xe2\x80\x99t")) split = lw.size() - 5;
    else {
      for (std::string_view cl : {"'s", "'re", "'ve", "'ll", "'d", "'m", "\xe2\x80\x99s"}) {
        if (lw.size() > cl.size() && lw.ends_with(cl)) {
          split = lw.size() - cl.size();
          break;
        }
      }
    }
    if (split != std::string::npos) {
      push(out, s, b, b + split);
      push(out, s, b + split, e);
    } else {
      push(out, s, b, e);
    }
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) push(out, s, it->first, it->second);
}

bool is_punct_token(std::string_view t) {
  for (char c : t)
    if (is_alpha(c) || is_digit(c)) return false;
  return true;
}

bool is_number_token(std::string_view t) {
  if (t.empty() || !(is_digit(t[0]) || t[0] == '$')) return false;
  for (char c : t)
    if (!(is_digit(c) || c == ',' || c == '.' || c == '%' || c == '$')) return false;
  return true;
}

bool noun_like(const Token& t) { return t.tag == Tag::noun || t.tag == Tag::number; }

}  // namespace

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && is_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !is_space(sentence[j])) ++j;
    if (j > i) tokenize_chunk(out, sentence, i, j);
    i = j;
  }
  for (auto& t : out) {
    t.lower = lower_ascii(t.text);
    // Normalize typographic apostrophes in clitics.
    if (t.lower.starts_with("\xe2\x80\x99")) t.lower = "'" + t.lower.substr(3);
    if (t.lower.ends_with("n\xe2\x80\x99t")) t.lower = "n't";
    t.capitalized = !t.text.empty() && is_upper(t.text[0]);
  }
  return out;
}

bool is_title_case(const std::vector<Token>& tokens) {
  std::size_t words = 0;
  std::size_t caps = 0;
  bool common_word_capitalized = false;
  bool first = true;
  for (const auto& t : tokens) {
    if (t.text.empty() || !is_alpha(t.text[0])) continue;
    // Names alone can make ordinary prose look title-cased; headlines also
    // capitalize verbs and function words.
    if (!first && t.capitalized &&
        (closed_class(t.lower) != WordClass::other || (verb_lemma(t.lower) && t.lower.size() >= 4)))
      common_word_capitalized = true;
    first = false;
    if (t.text.size() < 4) continue;
    ++words;
    caps += t.capitalized ? 1 : 0;
  }
  return words >= 3 && caps * 10 >= words * 6 && common_word_capitalized;
}

void tag_tokens(std::vector<Token>& tokens) {
  const bool title = is_title_case(tokens);
  const std::size_t n = tokens.size();
  std::vector<bool> candidate(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto& t = tokens[i];
    t.lemma = t.lower;
    if (is_number_token(t.lower)) {
      t.tag = Tag::number;
      continue;
    }
    if (is_punct_token(t.lower) && t.lower != "'s") {
      t.tag = Tag::punctuation;
      continue;
    }
    if (t.lower == "'s") {
      t.tag = Tag::possessive;
      continue;
    }
    switch (closed_class(t.lower)) {
      case WordClass::determiner: t.tag = Tag::determiner; break;
      case WordClass::preposition: t.tag = Tag::preposition; break;
      case WordClass::auxiliary: t.tag = Tag::auxiliary; break;
      case WordClass::modal: t.tag = Tag::modal; break;
      case WordClass::negation: t.tag = Tag::negation; break;
      case WordClass::conjunction: t.tag = Tag::conjunction; break;
      case WordClass::complementizer: t.tag = Tag::complementizer; break;
      case WordClass::pronoun: t.tag = Tag::pronoun; break;
      case WordClass::adverb: t.tag = Tag::adverb; break;
      case WordClass::to: t.tag = Tag::to; break;
      case WordClass::other:
        if (t.lower.size() > 4 && t.lower.ends_with("ly") && !verb_lemma(t.lower)) t.tag = Tag::adverb;
        else if (verb_lemma(t.lower)) {
          t.tag = Tag::verb;
          candidate[i] = true;
        } else {
          t.tag = Tag::noun;
        }
        break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& t = tokens[i];
    const Token* prev = i > 0 ? &tokens[i - 1] : nullptr;
    const Token* next = i + 1 < n ? &tokens[i + 1] : nullptr;
    if (t.lower == "that") {
      t.tag = (prev == nullptr || prev->tag == Tag::preposition) ? Tag::determiner : Tag::complementizer;
    }
    if (t.lower == "her" && (next == nullptr || !(next->tag == Tag::noun || next->tag == Tag::number || candidate[i + 1]))) {
      t.tag = Tag::pronoun;
    }
    if (t.tag == Tag::possessive && prev != nullptr && prev->tag == Tag::pronoun) t.tag = Tag::auxiliary;
    // "no link", "no evidence": a determiner, not verb negation.
    if (t.lower == "no" && next != nullptr && (next->tag == Tag::noun || candidate[i + 1])) t.tag = Tag::determiner;
    if (!candidate[i]) continue;
    if (prev != nullptr) {
      const bool nominal_context = prev->tag == Tag::determiner || prev->tag == Tag::possessive ||
                                   prev->tag == Tag::number ||
                                   (prev->tag == Tag::preposition && prev->lower != "by");
      const bool verbal_context = prev->tag == Tag::to || prev->tag == Tag::auxiliary ||
                                  prev->tag == Tag::modal || prev->tag == Tag::negation;
      if (nominal_context && !verbal_context) t.tag = Tag::noun;
      else if (prev->tag == Tag::preposition && prev->lower == "by" && t.lower.ends_with("ing")) t.tag = Tag::noun;
    }
    // An -s form right after a main verb is a plural object ("switched votes").
    if (t.tag == Tag::verb && prev != nullptr && prev->tag == Tag::verb && t.lower.ends_with('s') &&
        !t.lower.ends_with("ss") && (prev->lower.ends_with("ed") || is_past_participle(prev->lower)))
      t.tag = Tag::noun;
    // Gerund modifier inside a noun phrase ("the new voting law").
    if (t.tag == Tag::verb && t.lower.ends_with("ing") && i >= 2 && next != nullptr && next->tag == Tag::noun &&
        prev->tag == Tag::noun && tokens[i - 2].tag == Tag::determiner)
      t.tag = Tag::noun;
    // A capitalized word inside ordinary prose is a name, not a verb.
    if (t.tag == Tag::verb && i > 0 && t.capitalized && !title) t.tag = Tag::noun;
  }

  // Clause-initial verb candidates followed by nominal material, with another
  // verb later in the clause, are nouns ("Mail ballots raise ...").
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i].tag != Tag::verb) continue;
    const bool clause_start = i == 0 || tokens[i - 1].tag == Tag::complementizer ||
                              tokens[i - 1].tag == Tag::punctuation || tokens[i - 1].tag == Tag::conjunction;
    if (!clause_start) continue;
    if (i + 1 >= n || !(noun_like(tokens[i + 1]) || tokens[i + 1].tag == Tag::verb)) continue;
    bool later_verb = false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (tokens[j].tag == Tag::complementizer || tokens[j].tag == Tag::punctuation) break;
      if (tokens[j].tag == Tag::verb || tokens[j].tag == Tag::auxiliary || tokens[j].tag == Tag::modal) {
        later_verb = true;
        break;
      }
    }
    if (later_verb && tokens[i].lower != "stop") tokens[i].tag = Tag::noun;
  }
  // A noun-verb-verb run where the middle word follows a noun directly and the
  // next word is also a verb: the middle one is part of the noun compound
  // ("the vaccine mandate harms").
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (tokens[i].tag == Tag::verb && noun_like(tokens[i - 1]) && tokens[i + 1].tag == Tag::verb &&
        !tokens[i].lower.ends_with("ed") && is_verb_base(tokens[i].lower))
      tokens[i].tag = Tag::noun;
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& t = tokens[i];
    switch (t.tag) {
      case Tag::verb: t.lemma = verb_lemma(t.lower).value_or(t.lower); break;
      case Tag::auxiliary: t.lemma = auxiliary_lemma(t.lower); break;
      case Tag::modal: t.lemma = t.lower == "ca" ? "can" : (t.lower == "wo" ? "will" : t.lower); break;
      case Tag::noun: t.lemma = noun_lemma(t.lower); break;
      default: t.lemma = t.lower; break;
    }
  }
}

std::vector<Token> analyze(std::string_view sentence) {
  auto tokens = tokenize(sentence);
  tag_tokens(tokens);
  return tokens;
}

std::string strip_punctuation(std::string_view lower) {
  std::string out;
  out.reserve(lower.size());
  for (char c : lower) {
    if (is_alpha(c) || is_digit(c) || static_cast<unsigned char>(c) >= 0x80) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace coshare::narrative
