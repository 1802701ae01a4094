#pragma once

namespace entrorisk {

inline constexpr const char* kToolName = "entrorisk";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace entrorisk
