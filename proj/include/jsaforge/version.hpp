#pragma once

namespace jsaforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jsaforge
