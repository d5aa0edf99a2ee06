#include "storygen/remote_backend.hpp"

#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "storygen/errors.hpp"

namespace storygen {

namespace {

std::string excerpt(const std::string& body, std::size_t limit = 120) {
  if (body.size() <= limit) return body;
  return body.substr(0, limit) + "...";
}

// Truncate to max_tokens whitespace tokens and make sure the sentence ends
// with a terminator.
std::string normalize_sentence(const std::string& raw, int max_tokens) {
  std::istringstream in(raw);
  std::string word, out;
  int kept = 0;
  while (kept < max_tokens && in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
    ++kept;
  }
  if (out.empty() || (out.back() != '.' && out.back() != '!' && out.back() != '?')) {
    out += '.';
  }
  return out;
}

}  // namespace

RemoteBackend::RemoteBackend(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<std::string> RemoteBackend::generate(const GenerationRequest& request) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  nlohmann::json body{{"prompt", request.prompt},
                      {"max_tokens", request.max_tokens},
                      {"num_sentences", request.num_sentences},
                      {"seed", request.seed}};
  auto result = client.Post("/generate", body.dump(), "application/json");

  if (!result) {
    auto error = result.error();
    if (error == httplib::Error::ConnectionTimeout || error == httplib::Error::Read ||
        error == httplib::Error::Write) {
      throw BackendError(BackendError::Kind::timeout, httplib::to_string(error));
    }
    throw BackendError(BackendError::Kind::remote, httplib::to_string(error));
  }
  if (result->status != 200) {
    throw BackendError(BackendError::Kind::remote,
                       "status " + std::to_string(result->status) + ": " + excerpt(result->body));
  }
  auto parsed = nlohmann::json::parse(result->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("continuations") ||
      !parsed["continuations"].is_array()) {
    throw BackendError(BackendError::Kind::protocol,
                       "response missing continuations array: " + excerpt(result->body));
  }
  const auto& continuations = parsed["continuations"];
  if (continuations.size() != static_cast<std::size_t>(request.num_sentences)) {
    throw BackendError(BackendError::Kind::protocol,
                       "expected " + std::to_string(request.num_sentences) +
                           " continuations, got " + std::to_string(continuations.size()));
  }
  std::vector<std::string> sentences;
  sentences.reserve(continuations.size());
  for (const auto& item : continuations) {
    if (!item.is_string()) {
      throw BackendError(BackendError::Kind::protocol, "continuation is not a string");
    }
    sentences.push_back(normalize_sentence(item.get<std::string>(), request.max_tokens));
  }
  return sentences;
}

}  // namespace storygen
