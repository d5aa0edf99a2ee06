#pragma once

namespace storygen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace storygen
