#include "storygen/replacement_list.hpp"

#include <stdexcept>
#include <unordered_set>

#include "storygen/errors.hpp"

namespace storygen {

const std::vector<Feature>& ReplacementList::category(Category category) const {
  switch (category) {
    case Category::subject: return subjects;
    case Category::object: return objects;
    case Category::adjective: return adjectives;
    default: break;
  }
  throw std::logic_error("replacement list holds subjects, objects and adjectives only");
}

bool ReplacementList::contains(Category category, const std::string& word) const {
  for (const auto& feature : this->category(category)) {
    if (feature.word == word) return true;
  }
  return false;
}

ReplacementList build_replacement_list(const std::vector<Caption>& captions,
                                       const Lexicon& lexicon) {
  if (captions.empty()) throw EmptyInput();

  ReplacementList pool;
  std::unordered_set<std::string> seen_subjects, seen_objects, seen_adjectives;
  for (const auto& caption : captions) {
    auto tokens = tokenize(caption.text);
    if (tokens.empty()) continue;  // all-punctuation caption contributes nothing
    auto tagged = tag_sentence(tokens, lexicon);
    for (const auto& token : tagged.tokens) {
      switch (token.category) {
        case Category::subject:
          if (seen_subjects.insert(token.surface).second)
            pool.subjects.push_back({token.surface, caption.image_id});
          break;
        case Category::object:
          if (seen_objects.insert(token.surface).second)
            pool.objects.push_back({token.surface, caption.image_id});
          break;
        case Category::adjective:
          if (seen_adjectives.insert(token.surface).second)
            pool.adjectives.push_back({token.surface, caption.image_id});
          break;
        default:
          break;
      }
    }
  }
  if (pool.subjects.empty()) throw NoSubjectsFound();
  return pool;
}

}  // namespace storygen
