#pragma once

#include <filesystem>
#include <string>

#include "storygen/assembler.hpp"
#include "storygen/generator.hpp"
#include "storygen/replacement_list.hpp"

namespace storygen {

/// One JSON object per sentence:
/// {"iteration":int,"kind":"seed"|"continuation","text":string,
///  "events":[{"position":int,"category":string,"original":string,"replacement":string}]}
std::string corpus_to_jsonl(const RelationalCorpus& corpus);

/// Sidecar manifest body: {"config": {...}, "l": {...}}.
std::string corpus_manifest_json(const RelationalCorpus& corpus);

/// {"subjects":[{"word":...,"image_id":...},...],"objects":[...],"adjectives":[...]}
std::string replacement_list_json(const ReplacementList& pool);

std::string story_json(const Story& story);

/// Writes the corpus JSONL to `path` and the sidecar manifest to
/// `path + ".manifest.json"`. Throws IoError.
void write_corpus_files(const RelationalCorpus& corpus, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace storygen
