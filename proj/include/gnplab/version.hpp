#pragma once

namespace gnplab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gnplab
