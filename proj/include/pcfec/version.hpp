#pragma once

namespace pcfec {
inline constexpr const char* kVersion = "1.0.0";
}
