#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "storygen/backend.hpp"
#include "storygen/caption.hpp"
#include "storygen/lexicon.hpp"
#include "storygen/replacement_list.hpp"
#include "storygen/rng.hpp"
#include "storygen/tagger.hpp"

namespace storygen {

std::vector<std::string> default_verb_pool();

struct GeneratorConfig {
  double alpha = 0.5;      // per-slot replacement rate, in [0, 1]
  int iterations = 3;      // k
  int continuations = 1;   // m, backend sentences per iteration
  std::vector<std::string> verb_pool = default_verb_pool();
  std::uint64_t seed = 0;
  int max_tokens = 30;     // per continuation request

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct ReplacementEvent {
  int iteration = 0;           // 1-based generator iteration
  int sentence_index = 0;      // index into RelationalCorpus::sentences
  std::size_t position = 0;    // token index inside that sentence
  Category category = Category::subject;
  std::string original;
  std::string replacement;        // same category, drawn from L, != original
  std::string replacement_image_id;
};

/// Output of the generator loop: k*(1+m) sentences (k seeds, each followed
/// by its m continuations) plus the replacement log and snapshots of the
/// configuration and candidate pool that produced them.
struct RelationalCorpus {
  std::vector<TaggedSentence> sentences;
  std::vector<ReplacementEvent> events;
  GeneratorConfig config_snapshot;
  ReplacementList l_snapshot;

  std::vector<ReplacementEvent> events_for(int sentence_index) const;
};

/// Forms a seed sentence "the <subject> <verb> the <object>". Draw order:
/// verb, then (subject, object) pairs. When the subject and object pools
/// jointly span at least two images, pairs from a single image are redrawn
/// (at most 16 attempts, then the last pair is kept). Throws
/// InsufficientFeatures when L lacks a subject or an object.
TaggedSentence form_svo(const ReplacementList& pool,
                        const std::vector<std::string>& verb_pool, SplitMix64& rng);

/// Runs one Bernoulli(alpha) trial per subject/object/adjective token, left
/// to right. A firing token is replaced by a uniformly drawn same-category
/// entry of L different from itself; with no distinct candidate the token is
/// left unchanged and no event is logged. Verb and other tokens are never
/// touched. Event iteration/sentence_index are left at 0 for the caller.
std::pair<TaggedSentence, std::vector<ReplacementEvent>> replace_tokens(
    const TaggedSentence& sentence, const ReplacementList& pool, double alpha,
    SplitMix64& rng);

/// The full generator loop: builds L once, then per iteration forms an SVO
/// seed, requests m continuations from the backend (request seed derived
/// from config.seed and the iteration number), tags them, applies
/// replace_tokens to the seed and to each continuation, and appends all
/// 1+m replaced sentences in order.
RelationalCorpus run_generator(const std::vector<Caption>& captions,
                               const GeneratorConfig& config, TextGenBackend& backend,
                               const Lexicon& lexicon);

}  // namespace storygen
