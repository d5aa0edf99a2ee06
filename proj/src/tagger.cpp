#include "storygen/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace storygen {

namespace {

// Role assignment needs actual prepositions; the lexicon's coarse "func"
// class also holds determiners, pronouns and auxiliaries.
const std::unordered_set<std::string>& prepositions() {
  static const std::unordered_set<std::string> kSet{
      "of",      "in",      "on",      "at",      "by",     "for",     "with",
      "about",   "against", "between", "into",    "through", "during", "before",
      "after",   "above",   "below",   "to",      "from",   "up",      "down",
      "out",     "off",     "over",    "under",   "near",   "along",   "across",
      "around",  "behind",  "beside",  "beneath", "inside", "outside", "onto",
      "upon",    "toward",  "towards", "within",  "without", "among",  "amid",
      "underneath", "past", "beyond"};
  return kSet;
}

bool ends_with(const std::string& word, std::string_view suffix) {
  return word.size() >= suffix.size() &&
         word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Pos classify(const std::string& word, const Lexicon& lexicon) {
  if (auto pos = lexicon.lookup(word)) return *pos;
  if (ends_with(word, "ing") || ends_with(word, "ed")) return Pos::verb;
  if (ends_with(word, "ly")) return Pos::function_word;
  if (ends_with(word, "ous") || ends_with(word, "ful") || ends_with(word, "less") ||
      ends_with(word, "y")) {
    return Pos::adjective;
  }
  if (ends_with(word, "s") && !ends_with(word, "ss") && word.size() > 1) {
    if (auto stem = lexicon.lookup(word.substr(0, word.size() - 1))) return *stem;
  }
  return Pos::noun;
}

}  // namespace

const char* to_string(Category category) {
  switch (category) {
    case Category::subject: return "subject";
    case Category::object: return "object";
    case Category::adjective: return "adjective";
    case Category::verb: return "verb";
    case Category::other: return "other";
  }
  return "?";
}

Origin Origin::caption(std::string image_id) {
  Origin origin;
  origin.kind = Kind::caption;
  origin.image_id = std::move(image_id);
  return origin;
}

Origin Origin::seed(int iteration) {
  Origin origin;
  origin.kind = Kind::seed;
  origin.iteration = iteration;
  return origin;
}

Origin Origin::continuation(int iteration, int index) {
  Origin origin;
  origin.kind = Kind::continuation;
  origin.iteration = iteration;
  origin.index = index;
  return origin;
}

std::string TaggedSentence::text() const {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token.surface;
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;
    std::string raw = text.substr(start, i - start);
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto is_strippable = [](unsigned char c) {
      return c < 0x80 && !std::isalnum(c);  // keep multi-byte sequences intact
    };
    std::size_t b = 0, e = raw.size();
    while (b < e && is_strippable(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && is_strippable(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (e > b) tokens.push_back(raw.substr(b, e - b));
  }
  return tokens;
}

TaggedSentence tag_sentence(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  std::vector<Pos> pos;
  pos.reserve(tokens.size());
  for (const auto& token : tokens) pos.push_back(classify(token, lexicon));

  auto first_verb = std::find(pos.begin(), pos.end(), Pos::verb);
  const bool has_verb = first_verb != pos.end();
  const std::size_t verb_at = static_cast<std::size_t>(first_verb - pos.begin());

  TaggedSentence sentence;
  sentence.tokens.reserve(tokens.size());
  bool preposition_seen = false;
  bool noun_seen = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Category category = Category::other;
    switch (pos[i]) {
      case Pos::adjective:
        category = Category::adjective;
        break;
      case Pos::verb:
        category = Category::verb;
        break;
      case Pos::function_word:
        if (prepositions().count(tokens[i])) preposition_seen = true;
        category = Category::other;
        break;
      case Pos::noun:
        if (!has_verb) {
          category = noun_seen ? Category::object : Category::subject;
        } else if (i < verb_at) {
          category = preposition_seen ? Category::object : Category::subject;
        } else {
          category = Category::object;
        }
        noun_seen = true;
        break;
    }
    sentence.tokens.push_back({tokens[i], category, i});
  }
  return sentence;
}

}  // namespace storygen
