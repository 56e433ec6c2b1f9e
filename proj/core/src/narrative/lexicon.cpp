#include "coshare/narrative/lexicon.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace coshare::narrative {

namespace {

using Set = std::unordered_set<std::string_view>;

// Regular and irregular base verbs. Irregular forms are listed separately.
constexpr std::string_view kVerbs[] = {
    "abandon", "abolish", "abuse", "accept", "access", "accompany", "accuse", "achieve", "acknowledge",
    "acquire", "act", "adapt", "add", "address", "adjust", "administer", "admit", "adopt", "advance",
    "advise", "advocate", "affect", "afford", "agree", "aid", "aim", "alarm", "alert", "allege", "allow",
    "alter", "amend", "analyze", "announce", "annoy", "answer", "anticipate", "apologize", "appeal",
    "appear", "apply", "appoint", "approach", "approve", "argue", "arrange", "arrest", "arrive", "ask",
    "assassinate", "assault", "assert", "assess", "assign", "assist", "assume", "assure", "attach",
    "attack", "attempt", "attend", "attract", "authorize", "avoid", "await", "award", "back", "ban",
    "bar", "base", "battle", "beg", "behave", "believe", "belong", "benefit", "betray", "blame", "blast",
    "block", "boast", "boost", "borrow", "bother", "boycott", "brand", "breach", "brief", "broadcast",
    "burn", "bury", "calculate", "call", "campaign", "cancel", "capture", "care", "carry", "cause",
    "caution", "celebrate", "censor", "challenge", "change", "charge", "chase", "cheat", "check", "cite",
    "claim", "clarify", "clash", "classify", "clean", "clear", "close", "collapse", "collect", "combat",
    "combine", "comment", "commit", "compare", "compel", "compete", "complain", "complete", "comply",
    "compromise", "conceal", "concede", "concern", "conclude", "condemn", "conduct", "confirm",
    "confiscate", "confront", "confuse", "connect", "consider", "consist", "conspire", "constitute",
    "consult", "consume", "contact", "contain", "contaminate", "continue", "contract", "contradict",
    "contribute", "control", "convert", "convict", "convince", "cooperate", "coordinate", "copy",
    "correct", "corrupt", "count", "cover", "crash", "create", "credit", "criticize", "cross", "crush",
    "cure", "damage", "debate", "debunk", "decide", "declare", "decline", "decrease", "defeat", "defend",
    "defund", "delay", "delete", "deliver", "demand", "demonstrate", "denounce", "deny", "deploy",
    "deport", "depend", "deprive", "describe", "deserve", "design", "destroy", "detain", "detect",
    "determine", "develop", "die", "disable", "disappear", "discover", "discredit", "discuss", "dismiss",
    "display", "dispute", "disrupt", "distribute", "divide", "document", "dominate", "donate", "double",
    "doubt", "downplay", "drop", "earn", "educate", "elect", "eliminate", "embrace", "emerge", "employ",
    "enable", "encourage", "end", "endanger", "endorse", "enforce", "engage", "enjoy", "ensure", "enter",
    "equip", "erase", "escape", "establish", "estimate", "evacuate", "evade", "evaluate", "examine",
    "exceed", "exclude", "excuse", "execute", "exist", "expand", "expect", "experience", "explain",
    "exploit", "explore", "export", "expose", "express", "extend", "fabricate", "face", "fail", "fake",
    "falsify", "favor", "fear", "feature", "file", "fill", "finance", "finish", "fire", "fix", "flag",
    "flee", "flip", "focus", "follow", "force", "form", "frame", "fund", "gain", "gather", "generate",
    "govern", "grab", "grant", "guarantee", "guard", "guide", "halt", "handle", "happen", "harass", "harm",
    "hate", "head", "heal", "help", "hijack", "hire", "host", "hunt", "hurt", "identify", "ignore",
    "imagine", "impeach", "implement", "imply", "import", "impose", "imprison", "improve", "include",
    "incite", "increase", "indicate", "indict", "infect", "influence", "inform", "inject", "injure",
    "insist", "inspect", "inspire", "install", "instruct", "insult", "intend", "interfere", "interrupt",
    "intervene", "interview", "introduce", "invade", "invent", "invest", "investigate", "invite",
    "involve", "isolate", "issue", "jail", "join", "joke", "judge", "jump", "justify", "kill", "kiss",
    "label", "lack", "land", "last", "launch", "launder", "learn", "legalize", "like", "limit", "link",
    "list", "live", "load", "lobby", "locate", "lock", "look", "love", "maim", "mail", "maintain",
    "manage", "mandate", "manipulate", "march", "mark", "marry", "match", "matter", "measure", "mention",
    "migrate", "mislead", "miss", "mobilize", "mock", "monitor", "move", "murder", "name", "need",
    "negotiate", "nominate", "note", "notice", "object", "obstruct", "obtain", "occupy", "occur", "offer",
    "open", "operate", "oppose", "order", "organize", "outlaw", "overturn", "owe", "own", "pardon",
    "participate", "pass", "patent", "perform", "permit", "persecute", "persuade", "pick", "place",
    "plan", "plant", "play", "plead", "please", "plot", "plunge", "point", "poison", "poll", "pollute",
    "possess", "post", "postpone", "pour", "praise", "pray", "predict", "prefer", "prepare", "prescribe",
    "present", "preserve", "press", "pressure", "pretend", "prevent", "print", "prioritize", "proceed",
    "process", "produce", "profit", "prohibit", "promise", "promote", "propose", "prosecute", "protect",
    "protest", "prove", "provide", "provoke", "publish", "pull", "punish", "purchase", "purge", "push",
    "question", "quit", "quote", "raid", "raise", "rally", "rank", "rape", "rate", "reach", "react",
    "realize", "receive", "recognize", "recommend", "record", "recover", "recruit", "reduce", "refer",
    "reform", "refuse", "regret", "regulate", "reject", "relate", "release", "rely", "remain", "remove",
    "rename", "repeal", "repeat", "replace", "report", "represent", "repress", "request", "require",
    "rescue", "resign", "resist", "resolve", "respect", "respond", "restore", "restrict", "result",
    "retain", "retire", "return", "reveal", "reverse", "review", "revoke", "reward", "rig", "risk",
    "rob", "rule", "rush", "sabotage", "sanction", "save", "scam", "scare", "schedule", "score", "screen",
    "search", "secure", "seem", "seize", "select", "sentence", "separate", "serve", "settle", "share",
    "shift", "ship", "shock", "switch", "shout", "sign", "silence", "slam", "slash", "smear", "smuggle", "solve",
    "spark", "spoil", "sponsor", "spray", "spy", "stab", "stage", "start", "starve", "state", "stay",
    "sterilize", "stop", "store", "strengthen", "stress", "study", "submit", "succeed", "sue", "suffer",
    "suggest", "support", "suppose", "suppress", "surge", "surround", "survive", "suspect", "suspend",
    "sway", "talk", "target", "tax", "terminate", "terrify", "test", "testify", "thank", "threaten",
    "torture", "touch", "track", "trade", "train", "transfer", "transform", "transmit", "trap", "travel",
    "treat", "trigger", "trust", "try", "turn", "undermine", "unite", "unveil", "urge", "use",
    "vaccinate", "value", "violate", "visit", "vote", "wait", "walk", "want", "warn", "waste", "watch",
    "weaken", "welcome", "wish", "work", "worry", "wreck", "yell",
};

struct Irregular {
  std::string_view base;
  std::string_view past;
  std::string_view participle;
};

constexpr Irregular kIrregular[] = {
    {"arise", "arose", "arisen"}, {"be", "was", "been"}, {"bear", "bore", "born"},
    {"beat", "beat", "beaten"}, {"become", "became", "become"}, {"begin", "began", "begun"},
    {"bend", "bent", "bent"}, {"bet", "bet", "bet"}, {"bind", "bound", "bound"}, {"bite", "bit", "bitten"},
    {"bleed", "bled", "bled"}, {"blow", "blew", "blown"}, {"break", "broke", "broken"},
    {"breed", "bred", "bred"}, {"bring", "brought", "brought"}, {"build", "built", "built"},
    {"buy", "bought", "bought"}, {"catch", "caught", "caught"}, {"choose", "chose", "chosen"},
    {"come", "came", "come"}, {"cost", "cost", "cost"}, {"cut", "cut", "cut"}, {"deal", "dealt", "dealt"},
    {"dig", "dug", "dug"}, {"do", "did", "done"}, {"draw", "drew", "drawn"}, {"drink", "drank", "drunk"},
    {"drive", "drove", "driven"}, {"eat", "ate", "eaten"}, {"fall", "fell", "fallen"},
    {"feed", "fed", "fed"}, {"feel", "felt", "felt"}, {"fight", "fought", "fought"},
    {"find", "found", "found"}, {"fly", "flew", "flown"}, {"forbid", "forbade", "forbidden"},
    {"forget", "forgot", "forgotten"}, {"forgive", "forgave", "forgiven"}, {"freeze", "froze", "frozen"},
    {"get", "got", "gotten"}, {"give", "gave", "given"}, {"go", "went", "gone"}, {"grow", "grew", "grown"},
    {"hang", "hung", "hung"}, {"have", "had", "had"}, {"hear", "heard", "heard"}, {"hide", "hid", "hidden"},
    {"hit", "hit", "hit"}, {"hold", "held", "held"}, {"keep", "kept", "kept"}, {"know", "knew", "known"},
    {"lay", "laid", "laid"}, {"lead", "led", "led"}, {"leave", "left", "left"}, {"lend", "lent", "lent"},
    {"let", "let", "let"}, {"lie", "lied", "lied"}, {"lose", "lost", "lost"}, {"make", "made", "made"},
    {"mean", "meant", "meant"}, {"meet", "met", "met"}, {"mislead", "misled", "misled"},
    {"overcome", "overcame", "overcome"}, {"pay", "paid", "paid"}, {"put", "put", "put"},
    {"quit", "quit", "quit"}, {"read", "read", "read"}, {"ride", "rode", "ridden"},
    {"ring", "rang", "rung"}, {"rise", "rose", "risen"}, {"run", "ran", "run"}, {"say", "said", "said"},
    {"see", "saw", "seen"}, {"seek", "sought", "sought"}, {"sell", "sold", "sold"},
    {"send", "sent", "sent"}, {"set", "set", "set"}, {"shake", "shook", "shaken"},
    {"shoot", "shot", "shot"}, {"show", "showed", "shown"}, {"shut", "shut", "shut"},
    {"sing", "sang", "sung"}, {"sink", "sank", "sunk"}, {"sit", "sat", "sat"}, {"sleep", "slept", "slept"},
    {"speak", "spoke", "spoken"}, {"spend", "spent", "spent"}, {"spread", "spread", "spread"},
    {"stand", "stood", "stood"}, {"steal", "stole", "stolen"}, {"stick", "stuck", "stuck"},
    {"strike", "struck", "struck"}, {"swear", "swore", "sworn"}, {"sweep", "swept", "swept"},
    {"swim", "swam", "swum"}, {"take", "took", "taken"}, {"teach", "taught", "taught"},
    {"tear", "tore", "torn"}, {"tell", "told", "told"}, {"think", "thought", "thought"},
    {"throw", "threw", "thrown"}, {"understand", "understood", "understood"},
    {"undertake", "undertook", "undertaken"}, {"upset", "upset", "upset"}, {"wake", "woke", "woken"},
    {"wear", "wore", "worn"}, {"win", "won", "won"}, {"withdraw", "withdrew", "withdrawn"},
    {"write", "wrote", "written"},
};

const Set& determiners() {
  static const Set s = {"a", "an", "the", "this", "these", "those", "each", "every", "some", "any",
                        "all", "both", "either", "neither", "another", "such", "his", "her", "its",
                        "their", "our", "my", "your", "whose", "much", "few", "several", "many",
                        "most", "more", "less", "fewer", "other"};
  return s;
}

const Set& prepositions() {
  static const Set s = {"of", "in", "on", "at", "by", "for", "with", "from", "into", "onto", "about",
                        "against", "over", "under", "after", "before", "during", "between", "among",
                        "through", "without", "within", "across", "behind", "beyond", "toward",
                        "towards", "upon", "via", "per", "despite", "amid", "around", "near",
                        "off", "out", "up", "down", "like", "than", "along", "throughout", "inside",
                        "outside", "above", "below", "beneath", "since", "until"};
  return s;
}

const std::unordered_map<std::string_view, std::string_view>& auxiliaries() {
  static const std::unordered_map<std::string_view, std::string_view> m = {
      {"be", "be"},     {"am", "be"},     {"is", "be"},      {"are", "be"},   {"was", "be"},
      {"were", "be"},   {"been", "be"},   {"being", "be"},   {"'s", "be"},    {"'re", "be"},
      {"'m", "be"},     {"have", "have"}, {"has", "have"},   {"had", "have"}, {"having", "have"},
      {"'ve", "have"},  {"'d", "have"},   {"do", "do"},      {"does", "do"},  {"did", "do"},
      {"doing", "do"},  {"done", "do"}};
  return m;
}

const Set& modals() {
  static const Set s = {"will", "would", "can", "could", "should", "shall", "may", "might", "must",
                        "ca", "wo", "'ll", "cannot"};
  return s;
}

const Set& negations() {
  static const Set s = {"not", "never", "no", "n't"};
  return s;
}

const Set& conjunctions() {
  static const Set s = {"and", "or", "but", "nor", "yet", "so"};
  return s;
}

const Set& complementizers() {
  static const Set s = {"that", "which", "who", "whom", "because", "although", "though", "while",
                        "whereas", "if", "unless", "when", "where", "whether", "as", "once", "how",
                        "why", "what"};
  return s;
}

const Set& pronouns() {
  static const Set s = {"i", "me", "you", "he", "him", "she", "it", "we", "us", "they", "them",
                        "myself", "yourself", "himself", "herself", "itself", "ourselves",
                        "themselves", "someone", "somebody", "something", "anyone", "anybody",
                        "anything", "everyone", "everybody", "everything", "nobody", "nothing",
                        "one", "ones", "mine", "yours", "hers", "ours", "theirs", "there", "here"};
  return s;
}

const Set& adverbs() {
  static const Set s = {"also", "just", "even", "still", "already", "now", "then", "soon", "again",
                        "ever", "only", "very", "too", "quite", "rather", "almost", "nearly",
                        "recently", "reportedly", "allegedly", "actually", "really", "later",
                        "often", "always", "sometimes", "perhaps", "maybe", "indeed", "instead",
                        "thus", "therefore", "however", "meanwhile", "yesterday", "today",
                        "tomorrow", "away", "back", "together", "apparently", "secretly",
                        "deliberately", "intentionally", "officially", "finally", "quickly"};
  return s;
}

const Set& title_abbreviations() {
  static const Set s = {"mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "gen", "sen", "rep",
                        "gov", "lt", "col", "capt", "sgt", "rev", "hon", "pres", "maj", "cmdr",
                        "adm", "supt", "mt", "ft", "vs", "no", "fig", "vol", "approx", "dept",
                        "e.g", "i.e", "cf"};
  return s;
}

const Set& general_abbreviations() {
  static const Set s = {"u.s", "u.k", "u.n", "d.c", "e.u", "a.m", "p.m", "etc", "inc", "corp", "ltd",
                        "co", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
                        "nov", "dec", "est", "ph.d", "l.a", "n.y"};
  return s;
}

const Set& sentence_starters() {
  static const Set s = {"the", "a", "an", "he", "she", "it", "they", "we", "i", "you", "this",
                        "that", "these", "those", "there", "but", "and", "however", "in", "on",
                        "at", "after", "before", "his", "her", "their", "its", "our", "my",
                        "when", "while", "if", "as", "some", "many", "most", "no", "not", "then",
                        "meanwhile", "officials", "critics"};
  return s;
}

const Set& gazetteer() {
  static const Set s = {
      "trump", "donald trump", "biden", "joe biden", "pelosi", "nancy pelosi", "obama",
      "barack obama", "clinton", "hillary clinton", "bill clinton", "harris", "kamala harris",
      "fauci", "anthony fauci", "gates", "bill gates", "soros", "george soros", "mcconnell",
      "schumer", "sanders", "bernie sanders", "putin", "xi", "zuckerberg", "musk", "pence",
      "giuliani", "cuomo", "desantis", "newsom", "aoc", "ocasio-cortez", "cdc", "fda", "nih",
      "who", "fbi", "cia", "doj", "nsa", "epa", "irs", "usps", "nato", "un", "eu", "pfizer",
      "moderna", "merck", "astrazeneca", "johnson & johnson", "facebook", "twitter", "google",
      "youtube", "microsoft", "amazon", "cnn", "fox news", "msnbc", "congress", "senate",
      "white house", "pentagon", "supreme court", "democrats", "republicans", "gop",
      "antifa", "black lives matter", "blm", "america", "united states", "u.s.", "us", "china",
      "russia", "ukraine", "iran", "israel", "mexico", "canada", "europe", "georgia", "arizona",
      "pennsylvania", "michigan", "wisconsin", "nevada", "texas", "california", "florida",
      "new york", "washington", "wuhan", "covid", "covid-19"};
  return s;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_nouns() {
  static const std::unordered_map<std::string_view, std::string_view> m = {
      {"children", "child"}, {"men", "man"},       {"women", "woman"},     {"mice", "mouse"},
      {"feet", "foot"},      {"teeth", "tooth"},   {"geese", "goose"},     {"criteria", "criterion"},
      {"phenomena", "phenomenon"}, {"lives", "life"}, {"wives", "wife"},   {"knives", "knife"},
      {"leaves", "leaf"},    {"thieves", "thief"}, {"wolves", "wolf"},     {"halves", "half"},
      {"analyses", "analysis"}, {"crises", "crisis"}, {"theses", "thesis"}, {"diagnoses", "diagnosis"},
      {"headaches", "headache"}, {"niches", "niche"}, {"caches", "cache"}, {"viruses", "virus"},
      {"buses", "bus"},      {"gases", "gas"},     {"bonuses", "bonus"},   {"statuses", "status"},
      {"censuses", "census"}, {"campuses", "campus"}};
  return m;
}

const Set& invariant_nouns() {
  static const Set s = {"people", "news", "series", "species", "politics", "economics", "physics",
                        "police", "media", "data", "sheep", "fish", "deer", "aircraft", "covid",
                        "mathematics", "ethics", "diabetes", "measles", "mumps", "rabies", "herpes",
                        "aids", "always", "perhaps", "thus", "this", "his", "its", "us", "yes"};
  return s;
}

struct VerbTables {
  std::set<std::string, std::less<>> bases;
  std::unordered_map<std::string, std::string> irregular_forms;  // past/participle -> base
  std::unordered_set<std::string> participles;
  std::unordered_map<std::string, std::string> past;  // base -> past
  std::vector<std::string> sorted;
};

const VerbTables& verbs() {
  static const VerbTables t = [] {
    VerbTables v;
    for (auto b : kVerbs) v.bases.emplace(b);
    for (const auto& irr : kIrregular) {
      v.bases.emplace(irr.base);
      v.irregular_forms.emplace(std::string(irr.past), std::string(irr.base));
      v.irregular_forms.emplace(std::string(irr.participle), std::string(irr.base));
      v.participles.emplace(irr.participle);
      v.past.emplace(std::string(irr.base), std::string(irr.past));
    }
    // Forms that would otherwise shadow more common readings.
    v.irregular_forms.erase("found");
    v.irregular_forms.erase("left");
    v.irregular_forms.erase("lay");
    v.irregular_forms.erase("saw");
    v.irregular_forms.erase("bore");
    v.irregular_forms.erase("born");
    v.irregular_forms.erase("read");
    v.irregular_forms.erase("set");
    v.irregular_forms.erase("bound");
    v.irregular_forms.erase("meant");
    v.irregular_forms.emplace("found", "find");
    v.sorted.assign(v.bases.begin(), v.bases.end());
    return v;
  }();
  return t;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::optional<std::string> base_if_verb(const std::string& s) {
  if (verbs().bases.contains(s)) return s;
  return std::nullopt;
}

}  // namespace

WordClass closed_class(std::string_view lower) {
  if (lower == "to") return WordClass::to;
  if (negations().contains(lower)) return WordClass::negation;
  if (auxiliaries().contains(lower)) return WordClass::auxiliary;
  if (modals().contains(lower)) return WordClass::modal;
  if (determiners().contains(lower)) return WordClass::determiner;
  if (complementizers().contains(lower)) return WordClass::complementizer;
  if (prepositions().contains(lower)) return WordClass::preposition;
  if (conjunctions().contains(lower)) return WordClass::conjunction;
  if (pronouns().contains(lower)) return WordClass::pronoun;
  if (adverbs().contains(lower)) return WordClass::adverb;
  return WordClass::other;
}

std::optional<std::string> verb_lemma(std::string_view lower) {
  const auto& t = verbs();
  std::string w(lower);
  if (w.size() < 2) return std::nullopt;
  if (t.bases.contains(w)) return w;
  if (auto it = t.irregular_forms.find(w); it != t.irregular_forms.end()) return it->second;
  auto ends = [&](std::string_view suf) { return w.size() > suf.size() && w.ends_with(suf); };
  auto stem = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (ends("ies")) {
    if (auto b = base_if_verb(stem(3) + "y")) return b;
  }
  if (ends("es")) {
    if (auto b = base_if_verb(stem(2))) return b;
  }
  if (ends("s") && !ends("ss")) {
    if (auto b = base_if_verb(stem(1))) return b;
  }
  if (ends("ied")) {
    if (auto b = base_if_verb(stem(3) + "y")) return b;
  }
  if (ends("ed")) {
    if (auto b = base_if_verb(stem(2))) return b;
    if (auto b = base_if_verb(stem(1))) return b;
    const auto s = stem(2);
    if (s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2])
      if (auto b = base_if_verb(s.substr(0, s.size() - 1))) return b;
  }
  if (ends("ing") && w.size() > 5) {
    const auto s = stem(3);
    if (auto b = base_if_verb(s)) return b;
    if (auto b = base_if_verb(s + "e")) return b;
    if (s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2])
      if (auto b = base_if_verb(s.substr(0, s.size() - 1))) return b;
    if (s.ends_with("y"))
      if (auto b = base_if_verb(s.substr(0, s.size() - 1) + "ie")) return b;
  }
  return std::nullopt;
}

bool is_verb_base(std::string_view lower) { return verbs().bases.contains(lower); }

bool is_past_participle(std::string_view lower) {
  const auto& t = verbs();
  if (t.participles.contains(std::string(lower))) return true;
  if (lower.size() > 3 && lower.ends_with("ed")) return verb_lemma(lower).has_value();
  return false;
}

std::string verb_past(std::string_view base) {
  const auto& t = verbs();
  if (auto it = t.past.find(std::string(base)); it != t.past.end()) return it->second;
  std::string b(base);
  // Two-syllable verbs stressed on the final syllable also double.
  static const Set stressed_final = {"admit",  "commit", "compel", "control", "equip",  "expel",  "occur",
                                     "omit",   "patrol", "permit", "prefer",  "propel", "refer",  "regret",
                                     "submit", "transfer", "deter", "incur",  "rebel",  "acquit", "outwit"};
  if (stressed_final.contains(b)) return b + b.back() + "ed";
  if (b.ends_with("e")) return b + "d";
  if (b.size() > 2 && b.ends_with("y") && !is_vowel(b[b.size() - 2])) return b.substr(0, b.size() - 1) + "ied";
  // Double a final consonant after a single short vowel in one-syllable verbs.
  if (b.size() >= 3 && b.size() <= 4 && !is_vowel(b.back()) && is_vowel(b[b.size() - 2]) &&
      !is_vowel(b[b.size() - 3]) && b.back() != 'w' && b.back() != 'x' && b.back() != 'y')
    return b + b.back() + "ed";
  return b + "ed";
}

std::string noun_lemma(std::string_view lower) {
  std::string w(lower);
  if (w.size() <= 3) return w;
  if (invariant_nouns().contains(w)) return w;
  if (auto it = irregular_nouns().find(w); it != irregular_nouns().end()) return std::string(it->second);
  auto ends = [&](std::string_view suf) { return w.ends_with(suf); };
  if (ends("ss") || ends("us") || ends("is") || ends("ous")) return w;
  if (ends("ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends("sses") || ends("xes") || ends("zzes") || ends("ches") || ends("shes"))
    return w.substr(0, w.size() - 2);
  if (ends("s")) return w.substr(0, w.size() - 1);
  return w;
}

std::string auxiliary_lemma(std::string_view lower) {
  if (auto it = auxiliaries().find(lower); it != auxiliaries().end()) return std::string(it->second);
  return std::string(lower);
}

bool is_be_form(std::string_view lower) {
  auto it = auxiliaries().find(lower);
  return it != auxiliaries().end() && it->second == "be";
}

bool is_title_abbreviation(std::string_view lower) { return title_abbreviations().contains(lower); }

bool is_general_abbreviation(std::string_view lower) { return general_abbreviations().contains(lower); }

bool is_sentence_starter(std::string_view lower) { return sentence_starters().contains(lower); }

bool in_gazetteer(std::string_view lower) { return gazetteer().contains(lower); }

const std::vector<std::string>& verb_lexicon() { return verbs().sorted; }

}  // namespace coshare::narrative
