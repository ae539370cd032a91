#pragma once

namespace conelet {
inline constexpr const char* kVersion = "1.0.0";
}
