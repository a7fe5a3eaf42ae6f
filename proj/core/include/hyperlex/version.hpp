#pragma once

namespace hyperlex {

inline constexpr const char* kToolName = "hyperlex";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace hyperlex
