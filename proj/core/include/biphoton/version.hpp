#pragma once

namespace biphoton {

inline constexpr const char* kVersion = "0.1.0";

} // namespace biphoton
