#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace storygen {

/// FNV-1a 64-bit. Used only to fingerprint run inputs in manifests.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

inline std::string fnv1a64_hex(std::string_view data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t hash = fnv1a64(data);
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) {
    out += digits[(hash >> shift) & 0xF];
  }
  return out;
}

}  // namespace storygen
