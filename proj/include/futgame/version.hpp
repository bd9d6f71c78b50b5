#pragma once

namespace futgame {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace futgame
