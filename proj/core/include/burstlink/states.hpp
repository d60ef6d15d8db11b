#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace burstlink {

/// Package C-states ordered from shallowest to deepest. C7P is C7 with the
/// video decoder clock-gated.
enum class PackageCState : std::uint8_t { C0, C2, C3, C6, C7, C7P, C8, C9, C10 };

inline constexpr std::array<PackageCState, 9> kAllStates{
    PackageCState::C0, PackageCState::C2, PackageCState::C3,
    PackageCState::C6, PackageCState::C7, PackageCState::C7P,
    PackageCState::C8, PackageCState::C9, PackageCState::C10};

inline constexpr std::size_t kStateCount = kAllStates.size();

[[nodiscard]] constexpr std::size_t index(PackageCState s) noexcept {
    return static_cast<std::size_t>(s);
}

/// Depth comparison: true when `a` is a deeper (lower power) state than `b`.
[[nodiscard]] constexpr bool deeper(PackageCState a, PackageCState b) noexcept {
    return index(a) > index(b);
}

[[nodiscard]] std::string_view to_string(PackageCState s) noexcept;
[[nodiscard]] std::optional<PackageCState> parse_state(std::string_view name) noexcept;

enum class DramState : std::uint8_t { active, fast_powerdown, self_refresh, off };

inline constexpr std::array<DramState, 4> kAllDramStates{
    DramState::active, DramState::fast_powerdown, DramState::self_refresh, DramState::off};

[[nodiscard]] constexpr std::size_t index(DramState s) noexcept {
    return static_cast<std::size_t>(s);
}

[[nodiscard]] std::string_view to_string(DramState s) noexcept;
[[nodiscard]] std::optional<DramState> parse_dram_state(std::string_view name) noexcept;

} // namespace burstlink
