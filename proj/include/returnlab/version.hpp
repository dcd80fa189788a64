#pragma once

namespace returnlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace returnlab
