#pragma once

namespace mixedspec {

inline constexpr const char* kVersion = "mixedspec 0.1.0";

}
