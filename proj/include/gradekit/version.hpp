#pragma once

namespace gradekit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gradekit
