#include "storygen/ingest.hpp"

#include <algorithm>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

#include "storygen/errors.hpp"
#include "storygen/tagger.hpp"

namespace storygen {

namespace {

std::string excerpt(const std::string& body, std::size_t limit = 120) {
  if (body.size() <= limit) return body;
  return body.substr(0, limit) + "...";
}

bool is_timeout(httplib::Error error) {
  return error == httplib::Error::ConnectionTimeout || error == httplib::Error::Read ||
         error == httplib::Error::Write;
}

}  // namespace

std::vector<Caption> load_captions_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path.string());

  std::vector<Caption> captions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw MalformedRecord(line_no, "not a JSON object");
    }
    if (!record.contains("image_id") || !record["image_id"].is_string() ||
        record["image_id"].get<std::string>().empty()) {
      throw MalformedRecord(line_no, "missing image_id field");
    }
    if (!record.contains("text") || !record["text"].is_string()) {
      throw MalformedRecord(line_no, "missing text field");
    }
    auto text = record["text"].get<std::string>();
    if (text.find_first_not_of(" \t") == std::string::npos) {
      throw MalformedRecord(line_no, "text field is empty");
    }
    captions.push_back({record["image_id"].get<std::string>(), std::move(text),
                        CaptionSource::file});
  }
  if (captions.empty()) throw EmptyFile(path.string());
  return captions;
}

Caption MockCaptioner::caption(const ImageRef& image) {
  auto it = fixtures_.find(image.id);
  if (it == fixtures_.end()) throw UnknownImage(image.id);
  return {image.id, it->second, CaptionSource::mock};
}

CaptionServiceClient::CaptionServiceClient(std::string base_url,
                                           std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

Caption CaptionServiceClient::caption(const ImageRef& image) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  nlohmann::json body{{"image_uri", image.uri}};
  auto result = client.Post("/caption", body.dump(), "application/json");

  if (!result) {
    if (is_timeout(result.error())) throw CaptionTimeout(httplib::to_string(result.error()));
    throw ServiceError(0, httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    auto error_body = nlohmann::json::parse(result->body, nullptr, false);
    if (error_body.is_object() && error_body.value("error", "") == "unreadable_image") {
      throw UnreadableImage(image.uri);
    }
    throw ServiceError(result->status, excerpt(result->body));
  }
  auto parsed = nlohmann::json::parse(result->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("caption") ||
      !parsed["caption"].is_string()) {
    throw ServiceError(result->status, "response missing caption field: " + excerpt(result->body));
  }
  auto text = parsed["caption"].get<std::string>();
  if (tokenize(text).empty()) {
    throw ServiceError(result->status, "service returned an empty caption");
  }
  return {image.id, std::move(text), CaptionSource::service};
}

std::vector<ImageRef> list_images_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw MissingFile(dir.string());
  std::vector<ImageRef> images;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    images.push_back({entry.path().filename().string(), entry.path().string()});
  }
  std::sort(images.begin(), images.end(),
            [](const ImageRef& a, const ImageRef& b) { return a.id < b.id; });
  return images;
}

std::vector<Caption> caption_images(Captioner& captioner,
                                    const std::vector<ImageRef>& images) {
  std::vector<Caption> captions;
  captions.reserve(images.size());
  for (const auto& image : images) captions.push_back(captioner.caption(image));
  return captions;
}

}  // namespace storygen
