#pragma once

#include <string>
#include <vector>

#include "storygen/caption.hpp"
#include "storygen/lexicon.hpp"
#include "storygen/tagger.hpp"

namespace storygen {

/// One extracted feature word and the image it first came from.
struct Feature {
  std::string word;
  std::string image_id;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// The replacement candidate pool: subjects, objects and adjectives
/// extracted from the input captions, deduplicated per category, in
/// caption-then-position order.
struct ReplacementList {
  std::vector<Feature> subjects;
  std::vector<Feature> objects;
  std::vector<Feature> adjectives;

  /// Valid for subject, object and adjective only.
  const std::vector<Feature>& category(Category category) const;
  bool contains(Category category, const std::string& word) const;
  std::size_t total() const { return subjects.size() + objects.size() + adjectives.size(); }
};

/// Tags every caption and collects the union of subjects, objects and
/// adjectives. Throws EmptyInput for an empty caption list and
/// NoSubjectsFound when no caption yields a subject.
ReplacementList build_replacement_list(const std::vector<Caption>& captions,
                                       const Lexicon& lexicon);

}  // namespace storygen
