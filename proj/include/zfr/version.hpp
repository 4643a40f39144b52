#pragma once

namespace zfr {

inline constexpr const char* version = "0.1.0";

} // namespace zfr
