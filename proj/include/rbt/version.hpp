#pragma once

namespace rbt {

inline constexpr const char* version = "0.1.0";

}  // namespace rbt
