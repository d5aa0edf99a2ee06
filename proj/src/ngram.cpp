#include "storygen/ngram.hpp"

#include <algorithm>
#include <cctype>

#include "storygen/errors.hpp"
#include "storygen/rng.hpp"

namespace storygen {

std::vector<std::string> ngram_tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;
    std::string raw = text.substr(start, i - start);
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    bool terminal = false;
    for (char c : raw) {
      if (c == '.' || c == '!' || c == '?') terminal = true;
    }
    auto is_punct = [](unsigned char c) { return c < 0x80 && !std::isalnum(c); };
    std::size_t b = 0, e = raw.size();
    while (b < e && is_punct(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && is_punct(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (e > b) tokens.push_back(raw.substr(b, e - b));
    if (terminal) tokens.push_back(".");
  }
  return tokens;
}

NgramModel train_ngram(const std::string& corpus_text, int order) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  auto tokens = ngram_tokenize(corpus_text);
  if (tokens.size() < static_cast<std::size_t>(order)) {
    throw CorpusTooSmall(tokens.size(), order);
  }

  NgramModel model;
  model.order = order;
  model.tables.resize(static_cast<std::size_t>(order));
  for (const auto& token : tokens) model.vocabulary.insert(token);

  for (std::size_t context_len = 0; context_len < static_cast<std::size_t>(order);
       ++context_len) {
    auto& table = model.tables[context_len];
    for (std::size_t i = context_len; i < tokens.size(); ++i) {
      NgramModel::Context context(tokens.begin() + (i - context_len), tokens.begin() + i);
      ++table[context][tokens[i]];
    }
  }
  return model;
}

namespace {

// Longest matching context wins; falls through to the unigram table.
const NgramModel::SuccessorCounts* lookup_backoff(const NgramModel& model,
                                                  const NgramModel::Context& context) {
  std::size_t longest = std::min(context.size(), model.tables.size() - 1);
  for (std::size_t len = longest + 1; len-- > 0;) {
    NgramModel::Context key(context.end() - len, context.end());
    auto it = model.tables[len].find(key);
    if (it != model.tables[len].end() && !it->second.empty()) return &it->second;
  }
  return nullptr;
}

std::string sample(const NgramModel::SuccessorCounts& counts, SplitMix64& rng) {
  std::uint64_t total = 0;
  for (const auto& [token, count] : counts) total += count;
  std::uint64_t pick = rng.uniform_below(total);
  for (const auto& [token, count] : counts) {
    if (pick < count) return token;
    pick -= count;
  }
  return counts.rbegin()->first;  // unreachable for well-formed tables
}

}  // namespace

std::vector<std::string> ngram_generate(const NgramModel& model,
                                        const GenerationRequest& request) {
  if (model.empty()) throw BackendError(BackendError::Kind::protocol, "empty n-gram model");

  auto prompt_tokens = ngram_tokenize(request.prompt);
  NgramModel::Context prompt_tail;
  const std::size_t context_max = static_cast<std::size_t>(model.order) - 1;
  if (prompt_tokens.size() > context_max) {
    prompt_tail.assign(prompt_tokens.end() - context_max, prompt_tokens.end());
  } else {
    prompt_tail = prompt_tokens;
  }

  SplitMix64 rng(request.seed);
  std::vector<std::string> sentences;
  sentences.reserve(static_cast<std::size_t>(request.num_sentences));
  for (int s = 0; s < request.num_sentences; ++s) {
    NgramModel::Context context = prompt_tail;
    std::vector<std::string> words;
    while (words.size() < static_cast<std::size_t>(request.max_tokens)) {
      const auto* counts = lookup_backoff(model, context);
      if (!counts) break;  // empty unigram table cannot happen after training
      std::string token = sample(*counts, rng);
      if (token == ".") break;
      words.push_back(token);
      context.push_back(token);
      if (context.size() > context_max) context.erase(context.begin());
    }
    std::string sentence;
    for (const auto& word : words) {
      if (!sentence.empty()) sentence += ' ';
      sentence += word;
    }
    sentence += '.';
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

}  // namespace storygen
