#include "storygen/generator.hpp"

#include <unordered_set>

#include "storygen/errors.hpp"

namespace storygen {

std::vector<std::string> default_verb_pool() {
  return {"sees", "smells", "hears", "meets", "watches", "follows"};
}

void GeneratorConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must be in [0,1]");
  }
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (continuations < 1) throw ConfigError("continuations must be >= 1");
  if (verb_pool.empty()) throw ConfigError("verb pool must not be empty");
  if (max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
}

std::vector<ReplacementEvent> RelationalCorpus::events_for(int sentence_index) const {
  std::vector<ReplacementEvent> out;
  for (const auto& event : events) {
    if (event.sentence_index == sentence_index) out.push_back(event);
  }
  return out;
}

TaggedSentence form_svo(const ReplacementList& pool,
                        const std::vector<std::string>& verb_pool, SplitMix64& rng) {
  if (pool.subjects.empty()) throw InsufficientFeatures("no subjects in replacement list");
  if (pool.objects.empty()) throw InsufficientFeatures("no objects in replacement list");

  std::unordered_set<std::string> image_ids;
  for (const auto& feature : pool.subjects) image_ids.insert(feature.image_id);
  for (const auto& feature : pool.objects) image_ids.insert(feature.image_id);
  const bool want_cross_image = image_ids.size() >= 2;

  const std::string& verb = verb_pool[rng.uniform_below(verb_pool.size())];

  // Bounded redraw keeps the subject and object from the same image apart
  // whenever the pools make that possible; after 16 attempts the last pair
  // stands so single-image pools still terminate.
  const Feature* subject = nullptr;
  const Feature* object = nullptr;
  for (int attempt = 0; attempt < 16; ++attempt) {
    subject = &pool.subjects[rng.uniform_below(pool.subjects.size())];
    object = &pool.objects[rng.uniform_below(pool.objects.size())];
    if (!want_cross_image || subject->image_id != object->image_id) break;
  }

  TaggedSentence sentence;
  sentence.tokens = {
      {"the", Category::other, 0},
      {subject->word, Category::subject, 1},
      {verb, Category::verb, 2},
      {"the", Category::other, 3},
      {object->word, Category::object, 4},
  };
  return sentence;
}

std::pair<TaggedSentence, std::vector<ReplacementEvent>> replace_tokens(
    const TaggedSentence& sentence, const ReplacementList& pool, double alpha,
    SplitMix64& rng) {
  TaggedSentence result = sentence;
  std::vector<ReplacementEvent> events;

  for (auto& token : result.tokens) {
    if (token.category != Category::subject && token.category != Category::object &&
        token.category != Category::adjective) {
      continue;
    }
    if (!rng.bernoulli(alpha)) continue;

    const auto& candidates = pool.category(token.category);
    std::vector<const Feature*> distinct;
    distinct.reserve(candidates.size());
    for (const auto& feature : candidates) {
      if (feature.word != token.surface) distinct.push_back(&feature);
    }
    if (distinct.empty()) continue;  // no distinct candidate: leave unchanged, no event

    const Feature* pick = distinct[rng.uniform_below(distinct.size())];
    ReplacementEvent event;
    event.position = token.position;
    event.category = token.category;
    event.original = token.surface;
    event.replacement = pick->word;
    event.replacement_image_id = pick->image_id;
    events.push_back(std::move(event));
    token.surface = pick->word;
  }
  return {std::move(result), std::move(events)};
}

RelationalCorpus run_generator(const std::vector<Caption>& captions,
                               const GeneratorConfig& config, TextGenBackend& backend,
                               const Lexicon& lexicon) {
  config.validate();

  RelationalCorpus corpus;
  corpus.config_snapshot = config;
  corpus.l_snapshot = build_replacement_list(captions, lexicon);

  SplitMix64 rng(config.seed);
  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    TaggedSentence seed = form_svo(corpus.l_snapshot, config.verb_pool, rng);
    seed.origin = Origin::seed(iteration);

    GenerationRequest request;
    request.prompt = seed.text();
    request.max_tokens = config.max_tokens;
    request.num_sentences = config.continuations;
    request.seed = derive_stream(config.seed, static_cast<std::uint64_t>(iteration));
    auto continuations = backend.generate(request);

    std::vector<TaggedSentence> tagged;
    tagged.reserve(continuations.size());
    for (std::size_t i = 0; i < continuations.size(); ++i) {
      auto tokens = tokenize(continuations[i]);
      TaggedSentence ts =
          tokens.empty() ? TaggedSentence{} : tag_sentence(tokens, lexicon);
      ts.origin = Origin::continuation(iteration, static_cast<int>(i));
      tagged.push_back(std::move(ts));
    }

    auto append_replaced = [&](const TaggedSentence& input) {
      auto [replaced, events] = replace_tokens(input, corpus.l_snapshot, config.alpha, rng);
      const int sentence_index = static_cast<int>(corpus.sentences.size());
      for (auto& event : events) {
        event.iteration = iteration;
        event.sentence_index = sentence_index;
        corpus.events.push_back(std::move(event));
      }
      corpus.sentences.push_back(std::move(replaced));
    };

    append_replaced(seed);
    for (const auto& continuation : tagged) append_replaced(continuation);
  }
  return corpus;
}

}  // namespace storygen
