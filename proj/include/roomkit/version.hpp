#pragma once

namespace roomkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace roomkit
