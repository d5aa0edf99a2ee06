#include "storygen/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "storygen/builtin_data.hpp"
#include "storygen/errors.hpp"

namespace storygen {

namespace {

std::optional<Pos> parse_pos(const std::string& pos) {
  if (pos == "noun") return Pos::noun;
  if (pos == "adj") return Pos::adjective;
  if (pos == "verb") return Pos::verb;
  if (pos == "func") return Pos::function_word;
  return std::nullopt;
}

}  // namespace

Lexicon Lexicon::builtin() { return from_text(kBuiltinLexiconTsv, "<builtin>"); }

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str(), path.string());
}

Lexicon Lexicon::from_text(std::string_view tsv, const std::string& origin) {
  Lexicon lexicon;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ConfigError("lexicon " + origin + " line " + std::to_string(line_no) +
                        ": expected word<TAB>pos");
    }
    auto pos = parse_pos(line.substr(tab + 1));
    if (!pos) {
      throw ConfigError("lexicon " + origin + " line " + std::to_string(line_no) +
                        ": unknown pos tag '" + line.substr(tab + 1) + "'");
    }
    lexicon.entries_.emplace(line.substr(0, tab), *pos);
  }
  if (lexicon.entries_.empty()) {
    throw ConfigError("lexicon " + origin + " has no entries");
  }
  return lexicon;
}

std::optional<Pos> Lexicon::lookup(const std::string& word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace storygen
