#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "storygen/backend.hpp"
#include "storygen/generator.hpp"

namespace storygen {

struct Story {
  std::string prompt_used;
  std::string continuation;
  std::string full_text;  // prompt_used + " " + continuation, whitespace-normalized
  std::map<std::string, int> feature_hits;  // every L word -> occurrences in full_text
};

/// Corpus sentences joined in order into one sentence-terminated paragraph.
/// Throws EmptyCorpus.
std::string assemble_prompt(const RelationalCorpus& corpus);

/// One backend call with the assembled prompt; feature_hits is computed from
/// corpus.l_snapshot with case-insensitive word-boundary matching.
Story generate_story(const RelationalCorpus& corpus, TextGenBackend& backend,
                     int max_tokens, std::uint64_t seed);

/// Plain-text UTF-8 file, one corpus sentence per line. Throws IoError.
void emit_training_file(const RelationalCorpus& corpus, const std::filesystem::path& path);

/// Word-boundary occurrence count (both inputs expected lowercase).
int count_word_occurrences(const std::string& text, const std::string& word);

}  // namespace storygen
