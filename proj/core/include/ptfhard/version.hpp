#pragma once

namespace ptfhard {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ptfhard
