#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace storygen {

/// Coarse part-of-speech classes carried by the tagging lexicon.
enum class Pos { noun, adjective, verb, function_word };

/// Word -> coarse POS table loaded from TSV (word<TAB>pos, pos in
/// {noun, adj, verb, func}). A bundled table is compiled in; any file
/// in the same format can replace it.
class Lexicon {
 public:
  static Lexicon builtin();
  static Lexicon from_file(const std::filesystem::path& path);
  static Lexicon from_text(std::string_view tsv, const std::string& origin);

  std::optional<Pos> lookup(const std::string& word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Pos> entries_;
};

}  // namespace storygen
