#pragma once

namespace ringbath {
inline constexpr const char* kVersion = "0.1.0";
}
