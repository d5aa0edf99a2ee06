#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "storygen/caption.hpp"

namespace storygen {

/// Reads a captions file: UTF-8, one JSON object per line,
/// {"image_id": string, "text": string}. Order preserved, source=file.
/// Throws MissingFile, EmptyFile, MalformedRecord(line).
std::vector<Caption> load_captions_file(const std::filesystem::path& path);

class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual Caption caption(const ImageRef& image) = 0;
};

/// Deterministic test double: answers from a fixed image_id -> text map.
class MockCaptioner : public Captioner {
 public:
  explicit MockCaptioner(std::map<std::string, std::string> fixtures)
      : fixtures_(std::move(fixtures)) {}

  Caption caption(const ImageRef& image) override;

 private:
  std::map<std::string, std::string> fixtures_;
};

/// Client for a remote captioning service:
///   POST {base_url}/caption
///   request  {"image_uri": string}
///   response {"caption": string}
///
/// Non-200 responses raise ServiceError(status, body excerpt), except a JSON
/// body {"error": "unreadable_image"} which raises UnreadableImage. Connect
/// and read timeouts raise CaptionTimeout. The returned text is exactly the
/// response's caption field.
class CaptionServiceClient : public Captioner {
 public:
  CaptionServiceClient(std::string base_url, std::chrono::milliseconds timeout);

  Caption caption(const ImageRef& image) override;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

/// Regular files in `dir`, as ImageRefs with id = filename, sorted by id.
std::vector<ImageRef> list_images_dir(const std::filesystem::path& dir);

/// Captions every image in input order. Requests run one at a time, so the
/// output order is the input order.
std::vector<Caption> caption_images(Captioner& captioner, const std::vector<ImageRef>& images);

}  // namespace storygen
