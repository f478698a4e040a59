#pragma once

namespace risac {
inline constexpr const char* kVersion = "0.1.0";
}
