#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "storygen/lexicon.hpp"

namespace storygen {

enum class Category { subject, object, adjective, verb, other };

const char* to_string(Category category);

struct TaggedToken {
  std::string surface;  // non-empty, lowercased, punctuation-stripped
  Category category = Category::other;
  std::size_t position = 0;
};

/// Where a sentence came from: an input caption, a generated seed sentence,
/// or a backend continuation.
struct Origin {
  enum class Kind { caption, seed, continuation };

  Kind kind = Kind::caption;
  std::string image_id;  // caption only
  int iteration = 0;     // seed and continuation (1-based)
  int index = 0;         // continuation only (0-based within the iteration)

  static Origin caption(std::string image_id);
  static Origin seed(int iteration);
  static Origin continuation(int iteration, int index);
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;  // positions are contiguous 0..n-1
  Origin origin;

  /// Surfaces joined with single spaces.
  std::string text() const;
};

/// Lowercases, splits on whitespace, strips leading/trailing punctuation.
/// Tokens that are all punctuation are dropped; the result may be empty.
std::vector<std::string> tokenize(const std::string& text);

/// Assigns exactly one category to every token:
///   1. lexicon lookup (noun / adjective / verb / function word);
///   2. suffix heuristics for unknown words: -ing/-ed verb, -ly function
///      word, -ous/-ful/-less/-y adjective, trailing -s re-looked-up
///      without the s, anything else noun;
///   3. roles: nouns before the first verb are subjects unless a
///      preposition was seen first (then objects), nouns after the first
///      verb are objects, and with no verb in the sentence the first noun
///      is the subject and later nouns are objects.
TaggedSentence tag_sentence(const std::vector<std::string>& tokens, const Lexicon& lexicon);

}  // namespace storygen
