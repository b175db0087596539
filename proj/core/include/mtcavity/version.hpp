#pragma once

namespace mtcavity {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mtcavity
