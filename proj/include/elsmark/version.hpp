#pragma once

namespace elsmark {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace elsmark
