#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace storygen {

/// Base of every storygen error. `kind()` is the stable machine-readable
/// identifier printed by the CLI; `exit_code()` groups errors into the CLI
/// exit families (2 config, 3 ingest, 4 generation, 5 i/o).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }
  virtual int exit_code() const noexcept { return 1; }

 private:
  std::string kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
  int exit_code() const noexcept override { return 2; }
};

class IngestError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class MissingFile : public IngestError {
 public:
  explicit MissingFile(const std::string& path)
      : IngestError("missing_file", "file not found: " + path) {}
};

class EmptyFile : public IngestError {
 public:
  explicit EmptyFile(const std::string& path)
      : IngestError("empty_file", "no records in file: " + path) {}
};

class MalformedRecord : public IngestError {
 public:
  MalformedRecord(std::size_t line, const std::string& detail)
      : IngestError("malformed_record",
                    "malformed record at line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CaptionTimeout : public IngestError {
 public:
  explicit CaptionTimeout(const std::string& detail)
      : IngestError("timeout", "captioning request timed out: " + detail) {}
};

class ServiceError : public IngestError {
 public:
  ServiceError(int status, const std::string& excerpt)
      : IngestError("service_error",
                    "captioning service error (status " + std::to_string(status) + "): " + excerpt),
        status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class UnreadableImage : public IngestError {
 public:
  explicit UnreadableImage(const std::string& uri)
      : IngestError("unreadable_image", "service could not read image: " + uri) {}
};

class UnknownImage : public IngestError {
 public:
  explicit UnknownImage(const std::string& id)
      : IngestError("unknown_image", "no fixture caption for image id: " + id) {}
};

class GenerationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

class EmptyInput : public GenerationError {
 public:
  EmptyInput() : GenerationError("empty_input", "no captions to process") {}
};

class NoSubjectsFound : public GenerationError {
 public:
  NoSubjectsFound()
      : GenerationError("no_subjects_found", "no caption yielded a subject") {}
};

class InsufficientFeatures : public GenerationError {
 public:
  explicit InsufficientFeatures(const std::string& detail)
      : GenerationError("insufficient_features", "cannot form SVO sentence: " + detail) {}
};

class CorpusTooSmall : public GenerationError {
 public:
  CorpusTooSmall(std::size_t tokens, int order)
      : GenerationError("corpus_too_small",
                        "training corpus has " + std::to_string(tokens) +
                            " tokens, need at least " + std::to_string(order)) {}
};

class EmptyCorpus : public GenerationError {
 public:
  EmptyCorpus() : GenerationError("empty_corpus", "relational corpus has no sentences") {}
};

class BackendError : public GenerationError {
 public:
  enum class Kind { timeout, protocol, remote };

  BackendError(Kind kind, const std::string& detail)
      : GenerationError(kind_string(kind), "text generation backend failed: " + detail),
        backend_kind_(kind) {}
  Kind backend_kind() const noexcept { return backend_kind_; }

  static std::string kind_string(Kind kind) {
    switch (kind) {
      case Kind::timeout: return "backend_timeout";
      case Kind::protocol: return "backend_protocol";
      case Kind::remote: return "backend_remote";
    }
    return "backend";
  }

 private:
  Kind backend_kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
  int exit_code() const noexcept override { return 5; }
};

}  // namespace storygen
