#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace storygen {

struct GenerationRequest {
  std::string prompt;      // non-empty
  int max_tokens = 30;     // per returned sentence, >= 1
  int num_sentences = 1;   // >= 1
  std::uint64_t seed = 0;  // honored by the built-in backend, forwarded to remote ones
};

/// Text generation contract. Implementations return exactly
/// request.num_sentences strings, each at most request.max_tokens words and
/// sentence-terminated. Failures surface as BackendError.
class TextGenBackend {
 public:
  virtual ~TextGenBackend() = default;
  virtual std::vector<std::string> generate(const GenerationRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// Test backend: answers every request with the prompt itself, verbatim.
class EchoBackend : public TextGenBackend {
 public:
  std::vector<std::string> generate(const GenerationRequest& request) override {
    return std::vector<std::string>(static_cast<std::size_t>(request.num_sentences),
                                    request.prompt);
  }
  std::string name() const override { return "echo"; }
};

}  // namespace storygen
