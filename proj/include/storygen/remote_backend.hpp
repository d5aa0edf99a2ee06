#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "storygen/backend.hpp"

namespace storygen {

/// Client for a remote text generation service:
///   POST {base_url}/generate
///   request  {"prompt": string, "max_tokens": int, "num_sentences": int, "seed": int}
///   response {"continuations": [string, ...]}
///
/// Error mapping: connect/read timeouts -> BackendError(timeout); connection
/// failures and non-200 statuses -> BackendError(remote); malformed bodies or
/// a continuation count different from num_sentences -> BackendError(protocol).
/// Continuations longer than max_tokens words are truncated, and every
/// returned string is sentence-terminated.
class RemoteBackend : public TextGenBackend {
 public:
  RemoteBackend(std::string base_url, std::chrono::milliseconds timeout);

  std::vector<std::string> generate(const GenerationRequest& request) override;
  std::string name() const override { return "remote"; }

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace storygen
