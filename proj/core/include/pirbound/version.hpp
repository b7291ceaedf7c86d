#pragma once

namespace pirbound {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pirbound
