#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "storygen/corpus_io.hpp"
#include "storygen/errors.hpp"
#include "storygen/pipeline.hpp"
#include "storygen/version.hpp"

namespace {

using storygen::PipelineConfig;

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value ? value : fallback;
}

void print_error_line(const std::string& kind, int code, const std::string& message) {
  nlohmann::ordered_json line{
      {"error", nlohmann::ordered_json{{"kind", kind}, {"code", code}, {"message", message}}}};
  std::cerr << line.dump() << "\n";
}

struct CommonFlags {
  PipelineConfig config;
  std::string verbs_csv;
  std::string captioner_choice;  // inferred when empty
  std::string backend_choice = "ngram";
  std::string mode_choice = "prompt";

  void add_input_flags(CLI::App& cmd) {
    cmd.add_option("--captions", config.captions_path,
                   "Captions file (JSONL: {\"image_id\":...,\"text\":...})");
    cmd.add_option("--images-dir", config.images_dir, "Directory of images to caption");
    cmd.add_option("--captioner", captioner_choice, "Captioner: file, service or mock")
        ->check(CLI::IsMember({"file", "service", "mock"}));
    cmd.add_option("--captioner-url", config.captioner_url,
                   "Captioning service base URL (env STORYGEN_CAPTIONER_URL)");
    cmd.add_option("--captioner-timeout-ms", config.captioner_timeout_ms,
                   "Captioning request timeout in ms");
    cmd.add_option("--mock-captions", config.mock_captions_path,
                   "Fixture captions for the mock captioner (captions file format)");
    cmd.add_option("--lexicon", config.lexicon_path, "Tagging lexicon TSV (default: builtin)");
  }

  void add_generator_flags(CLI::App& cmd) {
    cmd.add_option("--alpha", config.gen.alpha, "Replacement rate in [0,1]");
    cmd.add_option("--iterations", config.gen.iterations, "Generator iterations (k)");
    cmd.add_option("--continuations", config.gen.continuations,
                   "Backend sentences per iteration (m)");
    cmd.add_option("--verbs", verbs_csv, "Comma-separated verb pool for seed sentences");
    cmd.add_option("--seed", config.gen.seed, "Run seed (64-bit unsigned)");
    cmd.add_option("--max-tokens", config.gen.max_tokens,
                   "Max tokens per continuation sentence");
    cmd.add_option("--backend", backend_choice, "Text generation backend: ngram or service")
        ->check(CLI::IsMember({"ngram", "service"}));
    cmd.add_option("--ngram-order", config.ngram_order, "Built-in backend n-gram order");
    cmd.add_option("--ngram-corpus", config.ngram_corpus_path,
                   "Training text for the built-in backend (default: builtin corpus)");
    cmd.add_option("--textgen-url", config.textgen_url,
                   "Text generation service base URL (env STORYGEN_TEXTGEN_URL)");
    cmd.add_option("--textgen-timeout-ms", config.textgen_timeout_ms,
                   "Text generation request timeout in ms");
  }

  void add_output_flags(CLI::App& cmd) {
    cmd.add_option("--mode", mode_choice, "Output mode: prompt or training")
        ->check(CLI::IsMember({"prompt", "training"}));
    cmd.add_option("--corpus-out", config.corpus_out, "Relational corpus JSONL path");
    cmd.add_option("--story-out", config.story_out, "Story JSON path (prompt mode)");
    cmd.add_option("--train-out", config.train_out, "Training text path (training mode)");
    cmd.add_option("--manifest-out", config.manifest_out,
                   "Run manifest path (default: <corpus-out>.run.json)");
    cmd.add_option("--story-max-tokens", config.story_max_tokens,
                   "Max tokens for the story continuation");
  }

  // Turns raw flag values into a validated PipelineConfig.
  void finalize() {
    if (config.captioner_url.empty()) {
      config.captioner_url = env_or("STORYGEN_CAPTIONER_URL", "");
    }
    if (config.textgen_url.empty()) {
      config.textgen_url = env_or("STORYGEN_TEXTGEN_URL", "");
    }
    if (!verbs_csv.empty()) {
      config.gen.verb_pool.clear();
      std::string word;
      std::istringstream in(verbs_csv);
      while (std::getline(in, word, ',')) {
        if (!word.empty()) config.gen.verb_pool.push_back(word);
      }
    }
    if (captioner_choice.empty()) {
      if (!config.captions_path.empty()) {
        captioner_choice = "file";
      } else if (!config.mock_captions_path.empty()) {
        captioner_choice = "mock";
      } else {
        captioner_choice = "service";
      }
    }
    config.captioner = captioner_choice == "service" ? storygen::CaptionerKind::service
                       : captioner_choice == "mock"  ? storygen::CaptionerKind::mock
                                                     : storygen::CaptionerKind::file;
    config.textgen = backend_choice == "service" ? storygen::TextgenKind::service
                                                 : storygen::TextgenKind::ngram;
    config.mode = mode_choice == "training" ? storygen::OutputMode::training
                                            : storygen::OutputMode::prompt;
    config.resolve_defaults();
    config.validate();
  }
};

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const storygen::Error& e) {
    print_error_line(e.kind(), e.exit_code(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    print_error_line("internal", 1, e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"storygen: turns image captions into a relational text corpus and a story"};
  app.set_version_flag("--version", storygen::kVersion);
  app.require_subcommand(1);

  CommonFlags run_flags, extract_flags, gendata_flags;
  std::string from_manifest;

  auto* run_cmd = app.add_subcommand("run", "Full pipeline: ingest, generate, assemble");
  run_flags.add_input_flags(*run_cmd);
  run_flags.add_generator_flags(*run_cmd);
  run_flags.add_output_flags(*run_cmd);
  run_cmd->add_option("--from-manifest", from_manifest,
                      "Re-run the configuration recorded in a run manifest");

  auto* extract_cmd =
      app.add_subcommand("extract", "Stages 1-2 only: print the replacement list as JSON");
  extract_flags.add_input_flags(*extract_cmd);
  extract_cmd->add_option("--manifest-out", extract_flags.config.manifest_out,
                          "Also write a run manifest to this path");

  auto* gendata_cmd =
      app.add_subcommand("gen-data", "Stages 1-3 without story assembly: write the corpus");
  gendata_flags.add_input_flags(*gendata_cmd);
  gendata_flags.add_generator_flags(*gendata_cmd);
  gendata_flags.add_output_flags(*gendata_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    print_error_line("config", 2, e.what());
    return 2;
  }

  if (run_cmd->parsed()) {
    return run_guarded([&] {
      if (!from_manifest.empty()) {
        auto config = storygen::config_from_manifest(from_manifest);
        config.validate();
        storygen::execute_run(config, true);
        return 0;
      }
      run_flags.finalize();
      storygen::execute_run(run_flags.config, true);
      return 0;
    });
  }
  if (extract_cmd->parsed()) {
    return run_guarded([&] {
      const bool want_manifest = extract_cmd->count("--manifest-out") > 0;
      extract_flags.finalize();
      auto pool = storygen::extract_replacements(extract_flags.config);
      std::cout << storygen::replacement_list_json(pool);
      if (want_manifest) {
        storygen::write_text_file(extract_flags.config.manifest_out,
                                  storygen::run_manifest_json(extract_flags.config, "extract"));
      }
      return 0;
    });
  }
  return run_guarded([&] {
    gendata_flags.finalize();
    storygen::execute_run(gendata_flags.config, false);
    return 0;
  });
}
