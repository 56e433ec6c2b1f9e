#include "coshare/corpus/quotes.hpp"

#include <optional>
#include <vector>

namespace coshare::corpus {
namespace {

enum class Mark { straight, open, close };

struct QuoteMark {
  std::size_t pos;
  std::size_t len;
  Mark kind;
};

std::optional<QuoteMark> mark_at(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c == '"') return QuoteMark{i, 1, Mark::straight};
  if (c == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    switch (static_cast<unsigned char>(s[i + 2])) {
      case 0x9C: return QuoteMark{i, 3, Mark::open};   // “
      case 0x9E: return QuoteMark{i, 3, Mark::open};   // „
      case 0x9D: return QuoteMark{i, 3, Mark::close};  // ”
      default: break;
    }
  }
  if (c == 0xC2 && i + 1 < s.size()) {
    const auto d = static_cast<unsigned char>(s[i + 1]);
    if (d == 0xAB) return QuoteMark{i, 2, Mark::open};   // «
    if (d == 0xBB) return QuoteMark{i, 2, Mark::close};  // »
  }
  return std::nullopt;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing_punct(char c) { return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?'; }

std::string tidy(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (space) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    if (is_closing_punct(c) && !out.empty() && out.back() == ' ') out.pop_back();
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace

std::string strip_direct_quotes(std::string_view text) {
  std::vector<QuoteMark> marks;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (auto m = mark_at(text, i)) {
      marks.push_back(*m);
      i += m->len - 1;
    }
  }
  if (marks.empty()) return std::string(text);

  std::string kept;
  kept.reserve(text.size());
  std::size_t cursor = 0;  // next byte of `text` not yet copied or dropped
  std::size_t m = 0;
  while (m < marks.size()) {
    const auto opener = marks[m];
    if (opener.pos < cursor) {
      ++m;
      continue;
    }
    kept.append(text.substr(cursor, opener.pos - cursor));
    if (opener.kind == Mark::close) {
      // Stray closing mark: drop the mark only.
      cursor = opener.pos + opener.len;
      ++m;
      continue;
    }
    std::size_t partner = m + 1;
    while (partner < marks.size() && marks[partner].kind == Mark::open) ++partner;
    if (partner < marks.size()) {
      cursor = marks[partner].pos + marks[partner].len;
      m = partner + 1;
      continue;
    }
    // Unbalanced: drop through the end of the sentence, keeping the terminator.
    std::size_t end = opener.pos + opener.len;
    while (end < text.size() && !is_terminator(text[end])) ++end;
    cursor = end;
    ++m;
  }
  if (cursor < text.size()) kept.append(text.substr(cursor));
  return tidy(kept);
}

}  // namespace coshare::corpus
