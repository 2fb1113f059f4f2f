#pragma once

namespace lexidist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lexidist
