#pragma once

namespace cornercut {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cornercut
