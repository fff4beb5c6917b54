#pragma once

namespace trps {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace trps
