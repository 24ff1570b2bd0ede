#pragma once

namespace epdyn {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace epdyn
