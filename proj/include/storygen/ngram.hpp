#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "storygen/backend.hpp"

namespace storygen {

/// Count-based n-gram model. tables[c] maps a context of c tokens to the
/// frequency table of its successors; tables[0] is the unigram table keyed
/// by the empty context. Ordered containers keep sampling walks
/// deterministic across platforms.
struct NgramModel {
  using Context = std::vector<std::string>;
  using SuccessorCounts = std::map<std::string, std::uint64_t>;

  int order = 3;
  std::vector<std::map<Context, SuccessorCounts>> tables;
  std::set<std::string> vocabulary;

  bool empty() const { return tables.empty() || vocabulary.empty(); }
};

/// Tokenizer for model training and prompt seeding: lowercases, splits on
/// whitespace, keeps sentence-final . ! ? as a separate "." token, drops
/// other punctuation.
std::vector<std::string> ngram_tokenize(const std::string& text);

/// Counts every window of length 1..order over the tokenized corpus.
/// Throws CorpusTooSmall when the corpus has fewer than `order` tokens.
NgramModel train_ngram(const std::string& corpus_text, int order);

/// Samples request.num_sentences continuations. The context starts from the
/// prompt's last order-1 tokens and backs off to shorter contexts, down to
/// the unigram table, whenever the current context is unseen (longest match
/// wins, no smoothing). Each sentence stops at a sampled "." or at
/// max_tokens words, and is rendered with a trailing period either way.
std::vector<std::string> ngram_generate(const NgramModel& model,
                                        const GenerationRequest& request);

class NgramBackend : public TextGenBackend {
 public:
  explicit NgramBackend(NgramModel model) : model_(std::move(model)) {}

  std::vector<std::string> generate(const GenerationRequest& request) override {
    return ngram_generate(model_, request);
  }
  std::string name() const override { return "ngram"; }

  const NgramModel& model() const { return model_; }

 private:
  NgramModel model_;
};

}  // namespace storygen
