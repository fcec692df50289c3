#pragma once

namespace ldct {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ldct
