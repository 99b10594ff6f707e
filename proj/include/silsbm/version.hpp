#pragma once

namespace silsbm {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace silsbm
