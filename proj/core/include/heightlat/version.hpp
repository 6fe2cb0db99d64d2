#pragma once

namespace heightlat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace heightlat
