#include "storygen/corpus_io.hpp"

#include <fstream>

#include "json.hpp"

#include "storygen/errors.hpp"

namespace storygen {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json feature_array(const std::vector<Feature>& features) {
  ordered_json array = ordered_json::array();
  for (const auto& feature : features) {
    array.push_back({{"word", feature.word}, {"image_id", feature.image_id}});
  }
  return array;
}

ordered_json config_json(const GeneratorConfig& config) {
  return ordered_json{{"alpha", config.alpha},
                      {"k", config.iterations},
                      {"m", config.continuations},
                      {"verb_pool", config.verb_pool},
                      {"seed", config.seed}};
}

}  // namespace

std::string corpus_to_jsonl(const RelationalCorpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const auto& sentence = corpus.sentences[i];
    ordered_json events = ordered_json::array();
    for (const auto& event : corpus.events_for(static_cast<int>(i))) {
      events.push_back({{"position", event.position},
                        {"category", to_string(event.category)},
                        {"original", event.original},
                        {"replacement", event.replacement}});
    }
    ordered_json line{
        {"iteration", sentence.origin.iteration},
        {"kind", sentence.origin.kind == Origin::Kind::seed ? "seed" : "continuation"},
        {"text", sentence.text()},
        {"events", std::move(events)},
    };
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string replacement_list_json(const ReplacementList& pool) {
  ordered_json json{{"subjects", feature_array(pool.subjects)},
                    {"objects", feature_array(pool.objects)},
                    {"adjectives", feature_array(pool.adjectives)}};
  return json.dump(2) + "\n";
}

std::string corpus_manifest_json(const RelationalCorpus& corpus) {
  ordered_json json{
      {"config", config_json(corpus.config_snapshot)},
      {"l", ordered_json::parse(replacement_list_json(corpus.l_snapshot))},
  };
  return json.dump(2) + "\n";
}

std::string story_json(const Story& story) {
  ordered_json json{{"prompt", story.prompt_used},
                    {"continuation", story.continuation},
                    {"feature_hits", story.feature_hits}};
  return json.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_corpus_files(const RelationalCorpus& corpus, const std::filesystem::path& path) {
  write_text_file(path, corpus_to_jsonl(corpus));
  write_text_file(path.string() + ".manifest.json", corpus_manifest_json(corpus));
}

}  // namespace storygen
