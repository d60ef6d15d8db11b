#pragma once

#include <chrono>
#include <cstdint>

namespace burstlink {

/// Internal time base. Timelines are built on integer nanoseconds so that
/// interval spans add up exactly to the window length.
using Duration = std::chrono::nanoseconds;

/// Report-side time unit.
using Seconds = std::chrono::duration<double>;

using Bytes = std::uint64_t;

inline constexpr std::int64_t kNanosPerSecond = 1'000'000'000;

[[nodiscard]] constexpr double to_seconds(Duration d) noexcept {
    return static_cast<double>(d.count()) * 1e-9;
}

[[nodiscard]] constexpr Duration from_seconds(double s) noexcept {
    const double ns = s * 1e9;
    return Duration{static_cast<std::int64_t>(ns < 0 ? ns - 0.5 : ns + 0.5)};
}

} // namespace burstlink
