#pragma once

namespace hzeta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hzeta
