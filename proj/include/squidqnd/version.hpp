#pragma once

namespace squidqnd {
inline constexpr const char* kToolName = "squidqnd";
inline constexpr const char* kVersion = "0.1.0";
}  // namespace squidqnd
