#pragma once

#include <string>

namespace storygen {

struct ImageRef {
  std::string id;   // unique within one run
  std::string uri;  // file path or URL, resolved by the captioning service
};

enum class CaptionSource { file, service, mock };

const char* to_string(CaptionSource source);

struct Caption {
  std::string image_id;
  std::string text;
  CaptionSource source = CaptionSource::file;
};

inline const char* to_string(CaptionSource source) {
  switch (source) {
    case CaptionSource::file: return "file";
    case CaptionSource::service: return "service";
    case CaptionSource::mock: return "mock";
  }
  return "?";
}

}  // namespace storygen
