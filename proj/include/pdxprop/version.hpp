#pragma once

namespace pdxprop {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pdxprop
