#pragma once

namespace qbath {

inline constexpr const char* version = "0.1.0";

} // namespace qbath
