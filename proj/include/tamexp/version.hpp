#pragma once

namespace tamexp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tamexp
