#include "storygen/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "storygen/builtin_data.hpp"
#include "storygen/corpus_io.hpp"
#include "storygen/digest.hpp"
#include "storygen/errors.hpp"
#include "storygen/ingest.hpp"
#include "storygen/ngram.hpp"
#include "storygen/remote_backend.hpp"
#include "storygen/version.hpp"

namespace storygen {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + ": " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* to_string(CaptionerKind kind) {
  switch (kind) {
    case CaptionerKind::file: return "file";
    case CaptionerKind::service: return "service";
    case CaptionerKind::mock: return "mock";
  }
  return "?";
}

const char* to_string(TextgenKind kind) {
  switch (kind) {
    case TextgenKind::ngram: return "ngram";
    case TextgenKind::service: return "service";
  }
  return "?";
}

const char* to_string(OutputMode mode) {
  return mode == OutputMode::prompt ? "prompt" : "training";
}

}  // namespace

void PipelineConfig::resolve_defaults() {
  if (mode == OutputMode::prompt && story_out.empty()) story_out = "story.json";
  if (manifest_out.empty()) manifest_out = corpus_out + ".run.json";
}

void PipelineConfig::validate() const {
  gen.validate();
  switch (captioner) {
    case CaptionerKind::file:
      if (captions_path.empty()) throw ConfigError("file captioner requires --captions");
      break;
    case CaptionerKind::service:
      if (images_dir.empty()) throw ConfigError("service captioner requires --images-dir");
      if (captioner_url.empty()) {
        throw ConfigError("service captioner requires --captioner-url or STORYGEN_CAPTIONER_URL");
      }
      break;
    case CaptionerKind::mock:
      if (images_dir.empty()) throw ConfigError("mock captioner requires --images-dir");
      if (mock_captions_path.empty()) throw ConfigError("mock captioner requires --mock-captions");
      break;
  }
  if (textgen == TextgenKind::service && textgen_url.empty()) {
    throw ConfigError("service backend requires --textgen-url or STORYGEN_TEXTGEN_URL");
  }
  if (textgen == TextgenKind::ngram && ngram_order < 1) {
    throw ConfigError("ngram order must be >= 1");
  }
  if (mode == OutputMode::training && train_out.empty()) {
    throw ConfigError("training mode requires --train-out");
  }
  if (captioner_timeout_ms < 1 || textgen_timeout_ms < 1) {
    throw ConfigError("timeouts must be positive");
  }
  if (story_max_tokens < 1) throw ConfigError("story max tokens must be >= 1");
  if (corpus_out.empty()) throw ConfigError("corpus output path must not be empty");
}

Lexicon load_lexicon(const PipelineConfig& config) {
  if (config.lexicon_path.empty()) return Lexicon::builtin();
  return Lexicon::from_file(config.lexicon_path);
}

std::vector<Caption> ingest_captions(const PipelineConfig& config) {
  switch (config.captioner) {
    case CaptionerKind::file:
      return load_captions_file(config.captions_path);
    case CaptionerKind::service: {
      CaptionServiceClient client(config.captioner_url,
                                  std::chrono::milliseconds(config.captioner_timeout_ms));
      return caption_images(client, list_images_dir(config.images_dir));
    }
    case CaptionerKind::mock: {
      std::map<std::string, std::string> fixtures;
      for (const auto& caption : load_captions_file(config.mock_captions_path)) {
        fixtures[caption.image_id] = caption.text;
      }
      MockCaptioner mock(std::move(fixtures));
      return caption_images(mock, list_images_dir(config.images_dir));
    }
  }
  throw ConfigError("unknown captioner kind");
}

std::unique_ptr<TextGenBackend> make_backend(const PipelineConfig& config,
                                             const std::vector<Caption>& captions) {
  if (config.textgen == TextgenKind::service) {
    return std::make_unique<RemoteBackend>(
        config.textgen_url, std::chrono::milliseconds(config.textgen_timeout_ms));
  }
  // The n-gram model trains on the run's own captions plus the bundled (or
  // user-supplied) corpus, so caption vocabulary is always in-model.
  std::string training_text;
  for (const auto& caption : captions) {
    training_text += caption.text;
    training_text += " .\n";
  }
  training_text += config.ngram_corpus_path.empty()
                       ? std::string(kBuiltinNgramCorpus)
                       : read_file(config.ngram_corpus_path, "ngram corpus");
  return std::make_unique<NgramBackend>(train_ngram(training_text, config.ngram_order));
}

ReplacementList extract_replacements(const PipelineConfig& config) {
  auto lexicon = load_lexicon(config);
  auto captions = ingest_captions(config);
  return build_replacement_list(captions, lexicon);
}

RunArtifacts execute_run(const PipelineConfig& config, bool with_story) {
  RunArtifacts artifacts;
  auto lexicon = load_lexicon(config);
  artifacts.captions = ingest_captions(config);
  auto backend = make_backend(config, artifacts.captions);
  artifacts.corpus = run_generator(artifacts.captions, config.gen, *backend, lexicon);

  write_corpus_files(artifacts.corpus, config.corpus_out);
  write_text_file(config.manifest_out,
                  run_manifest_json(config, with_story ? "run" : "gen-data"));

  if (with_story) {
    if (config.mode == OutputMode::prompt) {
      artifacts.story =
          generate_story(artifacts.corpus, *backend, config.story_max_tokens, config.gen.seed);
      write_text_file(config.story_out, story_json(*artifacts.story));
    } else {
      emit_training_file(artifacts.corpus, config.train_out);
    }
  }
  return artifacts;
}

std::string run_manifest_json(const PipelineConfig& config, const std::string& command) {
  ordered_json inputs = ordered_json::array();
  auto add_input = [&inputs](const std::string& name, const std::string& source,
                             const std::string& bytes) {
    inputs.push_back({{"name", name}, {"source", source}, {"digest", fnv1a64_hex(bytes)}});
  };
  switch (config.captioner) {
    case CaptionerKind::file:
      add_input("captions", config.captions_path, read_file(config.captions_path, "captions"));
      break;
    case CaptionerKind::service:
      break;  // remote service output is not a digestable input
    case CaptionerKind::mock:
      add_input("mock_captions", config.mock_captions_path,
                read_file(config.mock_captions_path, "mock captions"));
      break;
  }
  add_input("lexicon", config.lexicon_path.empty() ? "builtin" : config.lexicon_path,
            config.lexicon_path.empty() ? std::string(kBuiltinLexiconTsv)
                                        : read_file(config.lexicon_path, "lexicon"));
  if (config.textgen == TextgenKind::ngram) {
    add_input("ngram_corpus",
              config.ngram_corpus_path.empty() ? "builtin" : config.ngram_corpus_path,
              config.ngram_corpus_path.empty()
                  ? std::string(kBuiltinNgramCorpus)
                  : read_file(config.ngram_corpus_path, "ngram corpus"));
  }

  ordered_json json{
      {"tool", "storygen"},
      {"version", kVersion},
      {"command", command},
      {"config",
       ordered_json{
           {"alpha", config.gen.alpha},
           {"iterations", config.gen.iterations},
           {"continuations", config.gen.continuations},
           {"verbs", config.gen.verb_pool},
           {"seed", config.gen.seed},
           {"max_tokens", config.gen.max_tokens},
           {"mode", to_string(config.mode)},
           {"story_max_tokens", config.story_max_tokens},
           {"captioner",
            ordered_json{{"kind", to_string(config.captioner)},
                         {"captions", config.captions_path},
                         {"images_dir", config.images_dir},
                         {"url", config.captioner_url},
                         {"timeout_ms", config.captioner_timeout_ms},
                         {"mock_captions", config.mock_captions_path}}},
           {"textgen",
            ordered_json{{"kind", to_string(config.textgen)},
                         {"order", config.ngram_order},
                         {"corpus", config.ngram_corpus_path.empty() ? "builtin"
                                                                     : config.ngram_corpus_path},
                         {"url", config.textgen_url},
                         {"timeout_ms", config.textgen_timeout_ms}}},
           {"lexicon", config.lexicon_path.empty() ? "builtin" : config.lexicon_path},
       }},
      {"inputs", std::move(inputs)},
      {"outputs",
       ordered_json{{"corpus", config.corpus_out},
                    {"corpus_manifest", config.corpus_out + ".manifest.json"},
                    {"story", config.mode == OutputMode::prompt ? config.story_out : ""},
                    {"train", config.train_out},
                    {"manifest", config.manifest_out}}},
  };
  return json.dump(2) + "\n";
}

PipelineConfig config_from_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open manifest: " + path.string());
  auto manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object() || !manifest.contains("config")) {
    throw ConfigError("manifest is not a storygen run manifest: " + path.string());
  }
  const auto& cfg = manifest["config"];
  const auto& outputs = manifest["outputs"];

  PipelineConfig config;
  try {
    config.gen.alpha = cfg.at("alpha").get<double>();
    config.gen.iterations = cfg.at("iterations").get<int>();
    config.gen.continuations = cfg.at("continuations").get<int>();
    config.gen.verb_pool = cfg.at("verbs").get<std::vector<std::string>>();
    config.gen.seed = cfg.at("seed").get<std::uint64_t>();
    config.gen.max_tokens = cfg.at("max_tokens").get<int>();
    config.mode = cfg.at("mode").get<std::string>() == "training" ? OutputMode::training
                                                                  : OutputMode::prompt;
    config.story_max_tokens = cfg.at("story_max_tokens").get<int>();

    const auto& captioner = cfg.at("captioner");
    auto captioner_kind = captioner.at("kind").get<std::string>();
    config.captioner = captioner_kind == "service" ? CaptionerKind::service
                       : captioner_kind == "mock"  ? CaptionerKind::mock
                                                   : CaptionerKind::file;
    config.captions_path = captioner.at("captions").get<std::string>();
    config.images_dir = captioner.at("images_dir").get<std::string>();
    config.captioner_url = captioner.at("url").get<std::string>();
    config.captioner_timeout_ms = captioner.at("timeout_ms").get<int>();
    config.mock_captions_path = captioner.at("mock_captions").get<std::string>();

    const auto& textgen = cfg.at("textgen");
    config.textgen = textgen.at("kind").get<std::string>() == "service" ? TextgenKind::service
                                                                        : TextgenKind::ngram;
    config.ngram_order = textgen.at("order").get<int>();
    auto corpus = textgen.at("corpus").get<std::string>();
    config.ngram_corpus_path = corpus == "builtin" ? "" : corpus;
    config.textgen_url = textgen.at("url").get<std::string>();
    config.textgen_timeout_ms = textgen.at("timeout_ms").get<int>();

    auto lexicon = cfg.at("lexicon").get<std::string>();
    config.lexicon_path = lexicon == "builtin" ? "" : lexicon;

    config.corpus_out = outputs.at("corpus").get<std::string>();
    config.story_out = outputs.at("story").get<std::string>();
    config.train_out = outputs.at("train").get<std::string>();
    config.manifest_out = outputs.at("manifest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest field error in " + path.string() + ": " + e.what());
  }
  config.resolve_defaults();
  return config;
}

}  // namespace storygen
