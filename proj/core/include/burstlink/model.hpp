#pragma once

#include "burstlink/states.hpp"
#include "burstlink/units.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burstlink::model {

struct Resolution {
    std::uint32_t width = 1920;
    std::uint32_t height = 1080;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

inline constexpr Resolution kFHD{1920, 1080};
inline constexpr Resolution kQHD{2560, 1440};
inline constexpr Resolution k4K{3840, 2160};
inline constexpr Resolution k5K{5120, 2880};

/// Accepts "FHD", "QHD", "4K", "5K" or "<w>x<h>".
[[nodiscard]] std::optional<Resolution> parse_resolution(std::string_view text);
/// Preset name when the resolution matches one, otherwise "<w>x<h>".
[[nodiscard]] std::string resolution_name(Resolution r);

struct DisplayConfig {
    Resolution resolution{};
    std::uint32_t refresh_hz = 60;
    std::uint32_t bits_per_pixel = 24;
    double edp_max_bandwidth = 25.92e9; ///< bit/s
    bool panel_psr_capable = true;
    bool panel_psr2_capable = true;
    bool drfb_present = true;
};

/// DRAM power: operating energy per byte plus background power per DRAM state.
struct DramPowerModel {
    double coeff_read = 0.0;  ///< J/byte
    double coeff_write = 0.0; ///< J/byte
    std::array<double, 4> background_mw{}; ///< indexed by DramState
};

struct SystemConfig {
    Bytes dc_buffer_bytes = 524'288;
    double dram_fetch_bandwidth = 25e9; ///< B/s, DC chunk fetch from DRAM
    double decode_rate = 30e9;          ///< B/s of decoded output written to DRAM
    double stream_decode_rate = 8e9;    ///< B/s of decoded output streamed to the DC
    double gpu_pt_rate = 20e9;          ///< B/s of projected output
    Duration orchestration_time{1'900'000};     ///< driver work per frame, DRAM path
    Duration bypass_orchestration_time{333'333}; ///< driver work per frame, PMU-assisted path
    Duration repeat_orchestration_time{333'333}; ///< DRFB repeat window before C9
    double encoded_ratio = 0.02;        ///< encoded frame size / decoded frame size
    Bytes dram_capacity_bytes = 8ull << 30;
    DramPowerModel dram{};
};

enum class VideoKind : std::uint8_t { planar, vr360 };
enum class Scheme : std::uint8_t { baseline, bypass_only, bursting_only, burstlink };

inline constexpr std::array<Scheme, 4> kAllSchemes{
    Scheme::baseline, Scheme::bypass_only, Scheme::bursting_only, Scheme::burstlink};

[[nodiscard]] std::string_view to_string(VideoKind k) noexcept;
[[nodiscard]] std::string_view to_string(Scheme s) noexcept;
[[nodiscard]] std::optional<VideoKind> parse_kind(std::string_view text) noexcept;
[[nodiscard]] std::optional<Scheme> parse_scheme(std::string_view text) noexcept;

/// True for schemes that keep decoded frames out of DRAM.
[[nodiscard]] constexpr bool bypasses_dram(Scheme s) noexcept {
    return s == Scheme::bypass_only || s == Scheme::burstlink;
}
/// True for schemes that move frames at the eDP maximum rate into the DRFB.
[[nodiscard]] constexpr bool bursts(Scheme s) noexcept {
    return s == Scheme::bursting_only || s == Scheme::burstlink;
}

struct PlaneFlags {
    bool video_plane_only = true;
    bool single_video = true;
    bool graphics_interrupt = false;
    bool user_input_interrupt = false;
    bool multiple_displays = false;

    friend bool operator==(const PlaneFlags&, const PlaneFlags&) = default;
};

/// Windowed video with PSR2 selective update. The first `stage1_windows`
/// windows run the conventional multi-plane path.
struct WindowedVideo {
    double dirty_fraction = 1.0;
    std::uint32_t stage1_windows = 0;
    Bytes header_bytes = 128;

    friend bool operator==(const WindowedVideo&, const WindowedVideo&) = default;
};

struct ScenarioOverlay {
    double fbc_ratio = 1.0;
    std::uint32_t batch_frames = 1;
    double batch_cached_fraction = 0.34;
    double batch_decode_boost = 1.0; ///< decode-rate multiplier for batched decode
    std::optional<WindowedVideo> windowed;
    PlaneFlags planes{};
    /// Deepest package state the platform may enter; C3/C6 are only reached
    /// through this cap.
    PackageCState deepest_allowed = PackageCState::C10;

    friend bool operator==(const ScenarioOverlay&, const ScenarioOverlay&) = default;
};

struct WorkloadSpec {
    VideoKind kind = VideoKind::planar;
    std::uint32_t video_fps = 30;
    DisplayConfig display{};
    Scheme scheme = Scheme::baseline;
    ScenarioOverlay overlay{};
    std::uint32_t windows_to_simulate = 60;
    bool psr_alternate_windows = false; ///< baseline only
};

// ---------------------------------------------------------------------------
// Arithmetic

/// width * height * bits_per_pixel / 8, exact.
[[nodiscard]] Bytes frame_bytes(Resolution r, std::uint32_t bits_per_pixel);

/// 1/refresh_hz rounded to the nearest nanosecond.
[[nodiscard]] Duration frame_window(std::uint32_t refresh_hz);

/// Start of window `i` on an exact 1/refresh_hz grid, floored to nanoseconds.
/// Consecutive windows therefore sum to exactly one second per refresh_hz windows.
[[nodiscard]] Duration window_start(std::uint64_t i, std::uint32_t refresh_hz);
[[nodiscard]] Duration window_length(std::uint64_t i, std::uint32_t refresh_hz);

/// Conventional eDP rate in bit/s: frame_bytes * 8 * refresh_hz.
[[nodiscard]] double panel_stream_rate(const DisplayConfig& display);

[[nodiscard]] Seconds burst_transfer_time(Resolution r, std::uint32_t bits_per_pixel,
                                          double edp_max_bandwidth);

/// Frames decoded per refresh: refresh_hz / video_fps.
[[nodiscard]] std::uint32_t repeat_ratio(const WorkloadSpec& w);

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(std::string_view code) const noexcept;
};

/// Checks every configuration invariant and scheme feasibility. Never throws.
[[nodiscard]] ValidationReport validate_config(const WorkloadSpec& workload,
                                               const SystemConfig& system);

/// Throws Error(invalid_config or infeasible_config) carrying the first violation.
void require_valid(const WorkloadSpec& workload, const SystemConfig& system);

} // namespace burstlink::model
