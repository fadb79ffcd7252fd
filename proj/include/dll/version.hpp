#pragma once

namespace dll {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dll
