#pragma once

namespace genvor {

inline constexpr const char* kVersion = "0.3.0";

} // namespace genvor
