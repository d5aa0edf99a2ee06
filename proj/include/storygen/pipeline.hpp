#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "storygen/assembler.hpp"
#include "storygen/caption.hpp"
#include "storygen/generator.hpp"
#include "storygen/lexicon.hpp"
#include "storygen/replacement_list.hpp"

namespace storygen {

enum class CaptionerKind { file, service, mock };
enum class TextgenKind { ngram, service };
enum class OutputMode { prompt, training };

/// Fully resolved run configuration, shared by the CLI and the manifest.
struct PipelineConfig {
  // stage 1
  CaptionerKind captioner = CaptionerKind::file;
  std::string captions_path;       // file mode
  std::string images_dir;          // service / mock modes
  std::string captioner_url;
  int captioner_timeout_ms = 10000;
  std::string mock_captions_path;  // mock mode fixture file (captions format)

  // text generation backend
  TextgenKind textgen = TextgenKind::ngram;
  int ngram_order = 3;
  std::string ngram_corpus_path;   // empty = builtin corpus
  std::string textgen_url;
  int textgen_timeout_ms = 10000;

  std::string lexicon_path;        // empty = builtin lexicon

  GeneratorConfig gen;

  OutputMode mode = OutputMode::prompt;
  int story_max_tokens = 30;

  std::string corpus_out = "corpus.jsonl";
  std::string story_out;     // prompt mode; defaulted to story.json
  std::string train_out;     // training mode; required
  std::string manifest_out;  // defaulted to <corpus_out>.run.json

  void resolve_defaults();
  void validate() const;  // throws ConfigError
};

struct RunArtifacts {
  std::vector<Caption> captions;
  RelationalCorpus corpus;
  std::optional<Story> story;
};

Lexicon load_lexicon(const PipelineConfig& config);
std::vector<Caption> ingest_captions(const PipelineConfig& config);
std::unique_ptr<TextGenBackend> make_backend(const PipelineConfig& config,
                                             const std::vector<Caption>& captions);

/// Stages 1+2 only: captions -> replacement list (used by `storygen extract`).
ReplacementList extract_replacements(const PipelineConfig& config);

/// Full run: ingest, generate, write corpus + sidecar + run manifest, and in
/// prompt mode the story file / in training mode the training file.
/// `with_story=false` stops after the corpus (used by `storygen gen-data`).
RunArtifacts execute_run(const PipelineConfig& config, bool with_story);

/// Deterministic run record: tool version, resolved config, input digests
/// and output paths. Contains no timestamps, so identical runs produce
/// byte-identical manifests.
std::string run_manifest_json(const PipelineConfig& config, const std::string& command);

/// Rebuilds the resolved config recorded by run_manifest_json.
PipelineConfig config_from_manifest(const std::filesystem::path& path);

}  // namespace storygen
