#pragma once

namespace aecoupler {

inline constexpr const char* kVersion = "0.1.0";

} // namespace aecoupler
