#pragma once

namespace tstyle {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tstyle
