#include "storygen/assembler.hpp"

#include <cctype>
#include <fstream>

#include "storygen/errors.hpp"

namespace storygen {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

std::string normalize_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = true;  // also trims leading whitespace
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

}  // namespace

int count_word_occurrences(const std::string& text, const std::string& word) {
  if (word.empty()) return 0;
  int count = 0;
  std::size_t from = 0;
  while (true) {
    auto at = text.find(word, from);
    if (at == std::string::npos) break;
    const bool left_ok = at == 0 || !is_word_char(static_cast<unsigned char>(text[at - 1]));
    const std::size_t end = at + word.size();
    const bool right_ok =
        end >= text.size() || !is_word_char(static_cast<unsigned char>(text[end]));
    if (left_ok && right_ok) ++count;
    from = at + 1;
  }
  return count;
}

std::string assemble_prompt(const RelationalCorpus& corpus) {
  if (corpus.sentences.empty()) throw EmptyCorpus();
  std::string prompt;
  for (const auto& sentence : corpus.sentences) {
    if (!prompt.empty()) prompt += ' ';
    std::string text = sentence.text();
    if (text.empty() || (text.back() != '.' && text.back() != '!' && text.back() != '?')) {
      text += '.';
    }
    prompt += text;
  }
  return prompt;
}

Story generate_story(const RelationalCorpus& corpus, TextGenBackend& backend,
                     int max_tokens, std::uint64_t seed) {
  Story story;
  story.prompt_used = assemble_prompt(corpus);

  GenerationRequest request;
  request.prompt = story.prompt_used;
  request.max_tokens = max_tokens;
  request.num_sentences = 1;
  request.seed = seed;
  auto continuations = backend.generate(request);
  story.continuation = continuations.empty() ? std::string() : continuations.front();

  story.full_text = normalize_whitespace(story.prompt_used + " " + story.continuation);

  std::string lowered = story.full_text;
  for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto count_features = [&](const std::vector<Feature>& features) {
    for (const auto& feature : features) {
      if (!story.feature_hits.count(feature.word)) {
        story.feature_hits[feature.word] = count_word_occurrences(lowered, feature.word);
      }
    }
  };
  count_features(corpus.l_snapshot.subjects);
  count_features(corpus.l_snapshot.objects);
  count_features(corpus.l_snapshot.adjectives);
  return story;
}

void emit_training_file(const RelationalCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open training file for writing: " + path.string());
  for (const auto& sentence : corpus.sentences) {
    out << sentence.text() << '\n';
  }
  if (!out) throw IoError("failed writing training file: " + path.string());
}

}  // namespace storygen
