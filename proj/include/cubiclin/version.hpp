#pragma once

namespace cubiclin {

inline constexpr const char* kToolName = "cubiclin";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cubiclin
