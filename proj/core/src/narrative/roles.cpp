#include "coshare/narrative/roles.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "coshare/narrative/lexicon.hpp"

namespace coshare::narrative {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Chunk {
  std::size_t b = 0;
  std::size_t e = 0;
  std::size_t head = npos;  // npos: pronoun or content-free chunk
};

struct VerbGroup {
  std::size_t b = 0;
  std::size_t e = 0;
  std::vector<std::size_t> verbs;  // main verbs (coordinated ones share roles)
  bool has_be = false;
  bool consumed = false;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

class Extractor {
 public:
  Extractor(const std::vector<Token>& tokens, std::size_t sentence_id)
      : t_(tokens), n_(tokens.size()), sentence_id_(sentence_id) {
    named_ = named_mask(t_, detect_named_entities(t_));
    chunk_of_.assign(n_, npos);
    build_chunks();
    build_groups();
  }

  std::vector<RoleTuple> run() {
    std::vector<RoleTuple> out;
    std::optional<Phrase> previous_agent;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      auto& group = groups_[g];
      if (group.consumed) continue;
      const bool passive = is_passive(group);

      Phrase agent;
      Phrase patient;
      std::vector<Extension> extensions;
      if (passive) {
        if (auto c = left_chunk(group.b)) patient = phrase(*c);
        if (auto c = by_chunk(group.e)) agent = phrase(*c);
      } else {
        if (group.b > 0 && t_[group.b - 1].tag == Tag::to) {
          if (previous_agent) agent = *previous_agent;
        } else if (auto c = left_chunk(group.b)) {
          agent = phrase(*c);
        }
        if (auto c = right_chunk(group.e); c && !opens_clause(*c)) {
          patient = phrase(*c);
          extensions = chain_from(chunks_[*c].e);
        }
        previous_agent = agent;
      }
      for (std::size_t v : group.verbs) {
        RoleTuple tuple;
        tuple.agent = agent;
        tuple.verb = t_[v].lemma;
        tuple.negated = negated_at(v);
        tuple.patient = patient;
        tuple.extensions = extensions;
        tuple.sentence_id = sentence_id_;
        if (tuple.verb.empty()) continue;
        if (tuple.agent.empty() && tuple.patient.empty() && tuple.extensions.empty()) continue;
        out.push_back(std::move(tuple));
      }
    }
    return out;
  }

 private:
  bool is_nominal(std::size_t i) const { return t_[i].tag == Tag::noun || t_[i].tag == Tag::number; }

  void build_chunks() {
    std::size_t i = 0;
    while (i < n_) {
      const Tag tag = t_[i].tag;
      if (tag == Tag::pronoun) {
        add_chunk(Chunk{i, i + 1, npos});
        ++i;
        continue;
      }
      if (tag != Tag::determiner && tag != Tag::noun && tag != Tag::number) {
        ++i;
        continue;
      }
      Chunk c;
      c.b = i;
      std::size_t j = consume_segment(i, c.head);
      // "the risk of fraud": absorb of-phrases.
      while (j + 1 < n_ && t_[j].lower == "of" &&
             (t_[j + 1].tag == Tag::determiner || is_nominal(j + 1))) {
        std::size_t ignored = npos;
        const std::size_t k = consume_segment(j + 1, ignored);
        if (ignored == npos) break;
        if (c.head == npos) c.head = ignored;
        j = k;
      }
      c.e = j;
      add_chunk(c);
      i = j;
    }
  }

  // Determiners, then nouns/numbers/possessives. Sets head to the last noun.
  std::size_t consume_segment(std::size_t i, std::size_t& head) {
    std::size_t j = i;
    while (j < n_ && t_[j].tag == Tag::determiner) ++j;
    const std::size_t start = j;
    while (j < n_ && (is_nominal(j) || (t_[j].tag == Tag::possessive && j > start))) {
      if (t_[j].tag == Tag::noun && !strip_punctuation(t_[j].lower).empty()) head = j;
      ++j;
    }
    return j == i ? i + 1 : j;
  }

  void add_chunk(const Chunk& c) {
    for (std::size_t k = c.b; k < c.e; ++k) chunk_of_[k] = chunks_.size();
    chunks_.push_back(c);
  }

  static bool groupable(Tag tag) {
    return tag == Tag::auxiliary || tag == Tag::modal || tag == Tag::negation || tag == Tag::adverb;
  }

  void build_groups() {
    std::size_t i = 0;
    while (i < n_) {
      const Tag tag = t_[i].tag;
      if (tag != Tag::auxiliary && tag != Tag::modal && tag != Tag::negation && tag != Tag::verb) {
        ++i;
        continue;
      }
      VerbGroup g;
      g.b = i;
      std::vector<std::size_t> auxiliaries;
      std::size_t j = i;
      while (j < n_ && groupable(t_[j].tag)) {
        if (t_[j].tag == Tag::auxiliary) {
          auxiliaries.push_back(j);
          if (t_[j].lemma == "be") g.has_be = true;
        }
        ++j;
      }
      while (j < n_ && t_[j].tag == Tag::verb) {
        g.verbs.push_back(j);
        ++j;
        // Coordination: "maimed or killed", "lied, cheated and stole".
        std::size_t k = j;
        while (k < n_ && (t_[k].lower == "," || t_[k].lower == "and" || t_[k].lower == "or" ||
                          t_[k].tag == Tag::adverb))
          ++k;
        if (k > j && k < n_ && t_[k].tag == Tag::verb &&
            (t_[k - 1].lower == "and" || t_[k - 1].lower == "or" || t_[k - 1].lower == "," ||
             t_[k - 1].tag == Tag::adverb) &&
            has_coordinator(j, k)) {
          j = k;
          continue;
        }
        break;
      }
      g.e = j;
      if (g.verbs.empty()) {
        // Copula or auxiliary used as main verb ("is a fraud", "has no plan").
        for (auto it = auxiliaries.rbegin(); it != auxiliaries.rend(); ++it) {
          const auto& lemma = t_[*it].lemma;
          if (lemma == "be" || lemma == "have" || lemma == "do") {
            g.verbs.push_back(*it);
            g.has_be = false;
            break;
          }
        }
      }
      if (!g.verbs.empty()) groups_.push_back(g);
      i = std::max(j, i + 1);
    }
  }

  bool has_coordinator(std::size_t b, std::size_t e) const {
    for (std::size_t k = b; k < e; ++k)
      if (t_[k].lower == "," || t_[k].lower == "and" || t_[k].lower == "or") return true;
    return false;
  }

  bool is_passive(const VerbGroup& g) const {
    const std::size_t v = g.verbs.front();
    if (t_[v].tag != Tag::verb || !is_past_participle(t_[v].lower)) return false;
    if (g.has_be) return true;
    std::size_t p = g.e;
    while (p < n_ && t_[p].tag == Tag::adverb) ++p;
    return p < n_ && t_[p].lower == "by";
  }

  bool negated_at(std::size_t v) const {
    for (std::size_t d = 1; d <= 3 && d <= v; ++d) {
      const auto& t = t_[v - d];
      if (t.tag == Tag::negation) return true;
      if (t.tag == Tag::noun || t.tag == Tag::punctuation || t.tag == Tag::complementizer ||
          t.tag == Tag::pronoun || t.tag == Tag::determiner)
        return false;
    }
    return false;
  }

  std::optional<std::size_t> chunk_at(std::size_t i) const {
    if (i >= n_ || chunk_of_[i] == npos) return std::nullopt;
    return chunk_of_[i];
  }

  std::optional<std::size_t> left_chunk(std::size_t b) const {
    if (b == 0) return std::nullopt;
    std::size_t p = b - 1;
    while (p > 0 && t_[p].tag == Tag::adverb) --p;
    std::optional<std::size_t> c = chunk_at(p);
    if (!c && t_[p].tag == Tag::complementizer &&
        (t_[p].lower == "who" || t_[p].lower == "which" || t_[p].lower == "that") && p > 0) {
      // Relative clause: subject is the noun phrase before the pronoun.
      std::size_t q = p - 1;
      if (t_[q].lower == "," && q > 0) --q;
      c = chunk_at(q);
    }
    if (!c) return std::nullopt;
    // Skip back over prepositional modifiers: "vaccines for children cause".
    while (chunks_[*c].b >= 2) {
      const std::size_t prep = chunks_[*c].b - 1;
      if (t_[prep].tag != Tag::preposition || t_[prep].lower == "by") break;
      auto outer = chunk_at(prep - 1);
      if (!outer || chunks_[*outer].head == npos) break;
      c = outer;
    }
    return c;
  }

  std::optional<std::size_t> right_chunk(std::size_t e) const {
    std::size_t p = e;
    while (p < n_ && t_[p].tag == Tag::adverb) ++p;
    if (p >= n_) return std::nullopt;
    if (auto c = chunk_at(p)) return c;
    if ((t_[p].tag == Tag::preposition && t_[p].lower != "by") || t_[p].tag == Tag::to) {
      if (auto c = chunk_at(p + 1); c && chunks_[*c].head != npos) return c;
    }
    return std::nullopt;
  }

  // "said the ballots were destroyed": the noun phrase is the subject of a
  // complement clause, not an object.
  bool opens_clause(std::size_t ci) const {
    const std::size_t e = chunks_[ci].e;
    if (e >= n_) return false;
    const Tag tag = t_[e].tag;
    return tag == Tag::verb || tag == Tag::auxiliary || tag == Tag::modal;
  }

  std::optional<std::size_t> by_chunk(std::size_t e) const {
    std::size_t p = e;
    while (p < n_ && t_[p].tag == Tag::adverb) ++p;
    if (p < n_ && t_[p].lower == "by") return chunk_at(p + 1);
    return std::nullopt;
  }

  std::optional<std::size_t> group_starting_at(std::size_t i) const {
    for (std::size_t g = 0; g < groups_.size(); ++g)
      if (groups_[g].b == i) return g;
    return std::nullopt;
  }

  // "X to develop Y (to ...)" after a patient chunk ending at `e`.
  std::vector<Extension> chain_from(std::size_t e) {
    std::vector<Extension> out;
    while (e + 1 < n_ && t_[e].tag == Tag::to) {
      auto g = group_starting_at(e + 1);
      if (!g) break;
      auto& group = groups_[*g];
      if (t_[group.verbs.front()].tag != Tag::verb) break;
      group.consumed = true;
      Extension ext;
      ext.verb = t_[group.verbs.front()].lemma;
      ext.negated = negated_at(group.verbs.front());
      auto c = right_chunk(group.e);
      if (c) ext.patient = phrase(*c);
      out.push_back(std::move(ext));
      if (!c) break;
      e = chunks_[*c].e;
    }
    return out;
  }

  Phrase phrase(std::size_t ci) const {
    const Chunk& c = chunks_[ci];
    Phrase p;
    for (std::size_t k = c.b; k < c.e; ++k) {
      if (k > c.b) p.surface += ' ';
      p.surface += t_[k].text;
    }
    if (c.head == npos) return p;  // stopword filler
    bool all_named = true;
    for (std::size_t k = c.b; k < c.e; ++k) {
      if (t_[k].tag != Tag::noun) continue;
      std::string token = strip_punctuation(t_[k].lower);
      if (token.empty()) continue;
      std::string lemma = named_[k] ? token : strip_punctuation(t_[k].lemma);
      if (lemma.empty()) lemma = token;
      all_named = all_named && named_[k];
      p.tokens.push_back(std::move(token));
      p.lemmas.push_back(std::move(lemma));
    }
    p.is_named = all_named && !p.lemmas.empty();
    p.head = strip_punctuation(t_[c.head].lower);
    return p;
  }

  const std::vector<Token>& t_;
  std::size_t n_;
  std::size_t sentence_id_;
  std::vector<bool> named_;
  std::vector<Chunk> chunks_;
  std::vector<std::size_t> chunk_of_;
  std::vector<VerbGroup> groups_;
};

}  // namespace

std::string Phrase::normalized() const { return join(lemmas); }

std::string Phrase::render() const { return is_named ? normalized() : head; }

bool RoleTuple::complete() const { return !verb.empty() && (!patient.empty() || !extensions.empty()); }

std::vector<std::vector<std::string>> label_components(
    const RoleTuple& tuple, const std::function<std::string(const Phrase&)>& label_of) {
  std::vector<std::vector<std::string>> out;
  if (tuple.verb.empty()) return out;
  auto verb_of = [](const std::string& verb, bool negated) { return negated ? "not " + verb : verb; };
  auto push_phrase = [&](std::vector<std::string>& parts, const Phrase& p) {
    if (p.empty()) return false;
    auto label = label_of(p);
    if (label.empty()) return false;
    parts.push_back(std::move(label));
    return true;
  };
  const std::string v1 = verb_of(tuple.verb, tuple.negated);

  if (tuple.extensions.empty()) {
    std::vector<std::string> parts;
    push_phrase(parts, tuple.agent);
    parts.push_back(v1);
    if (push_phrase(parts, tuple.patient)) out.push_back(std::move(parts));
    return out;
  }

  // Base triple with the chain's final object ("vaccine cause shingles").
  {
    std::vector<std::string> parts;
    push_phrase(parts, tuple.agent);
    parts.push_back(v1);
    if (push_phrase(parts, tuple.extensions.back().patient) || push_phrase(parts, tuple.patient))
      out.push_back(std::move(parts));
  }
  // Links ("people develop shingles").
  const Phrase* prev = &tuple.patient;
  for (const auto& ext : tuple.extensions) {
    std::vector<std::string> parts;
    if (push_phrase(parts, *prev)) {
      parts.push_back(verb_of(ext.verb, ext.negated));
      if (push_phrase(parts, ext.patient)) out.push_back(std::move(parts));
    }
    prev = &ext.patient;
  }
  // Full chain ("vaccine cause people develop shingles").
  {
    std::vector<std::string> parts;
    push_phrase(parts, tuple.agent);
    parts.push_back(v1);
    bool object = push_phrase(parts, tuple.patient);
    for (const auto& ext : tuple.extensions) {
      parts.push_back(verb_of(ext.verb, ext.negated));
      object = push_phrase(parts, ext.patient) || object;
    }
    if (object) out.push_back(std::move(parts));
  }
  return out;
}

std::vector<std::string> RoleTuple::render() const {
  std::vector<std::string> out;
  for (const auto& parts : label_components(*this, [](const Phrase& p) { return p.render(); })) {
    auto s = join(parts);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<RoleTuple> extract_role_tuples(const std::vector<Token>& tokens, std::size_t sentence_id) {
  return Extractor(tokens, sentence_id).run();
}

std::vector<RoleTuple> extract_role_tuples(std::string_view sentence, std::size_t sentence_id) {
  return extract_role_tuples(analyze(sentence), sentence_id);
}

std::vector<Phrase> role_phrases(const std::vector<RoleTuple>& tuples) {
  std::vector<Phrase> out;
  for (const auto& t : tuples) {
    if (!t.agent.empty()) out.push_back(t.agent);
    if (!t.patient.empty()) out.push_back(t.patient);
    for (const auto& e : t.extensions)
      if (!e.patient.empty()) out.push_back(e.patient);
  }
  return out;
}

}  // namespace coshare::narrative
