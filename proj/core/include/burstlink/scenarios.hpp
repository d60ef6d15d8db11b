#pragma once

#include "burstlink/cstates.hpp"
#include "burstlink/model.hpp"
#include "burstlink/power.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace burstlink::scenarios {

struct OverlayResult {
    model::WorkloadSpec workload;
    std::vector<std::string> warnings;
};

/// Frame-buffer compression. A no-op with a warning for schemes that already
/// keep decoded frames out of DRAM.
[[nodiscard]] OverlayResult apply_fbc(const model::WorkloadSpec& workload, double fbc_ratio);

/// Decode batching. Throws Error(infeasible_config) when DRAM cannot hold the batch.
[[nodiscard]] OverlayResult apply_batching(const model::WorkloadSpec& workload,
                                           const model::SystemConfig& system,
                                           std::uint32_t batch_frames,
                                           double cached_fraction = 0.34,
                                           double decode_boost = 1.0);

/// eDP payload for a PSR2 selective update: dirty bytes plus one rectangle header.
[[nodiscard]] Bytes selective_update_bytes(const model::DisplayConfig& display, double dirty_fraction,
                                           Bytes header_bytes = 128);

/// Destination selector: keeps a DRAM-bypassing scheme only when the video
/// plane is the sole active plane on a single DRFB panel.
[[nodiscard]] model::Scheme select_scheme(const model::PlaneFlags& flags, model::Scheme requested,
                                          const model::DisplayConfig& display) noexcept;

/// One dirty fraction per window.
[[nodiscard]] std::vector<double> load_dirty_trace(const std::filesystem::path& path);
[[nodiscard]] std::vector<double> parse_dirty_trace(std::string_view csv);

struct SinglePlaneComparison {
    power::EnergyReport conventional;
    power::EnergyReport bursting;
    double reduction_percent = 0;
    std::vector<timeline::WindowTimeline> conventional_timelines;
    std::vector<timeline::WindowTimeline> bursting_timelines;
};

/// Graphics workload with one plane: per window the DC bursts the dirty part
/// of the frame from DRAM and the package drops to C9, compared against
/// conventional full-frame streaming. The trace length sets the window count.
[[nodiscard]] SinglePlaneComparison single_plane_burst(const model::DisplayConfig& display,
                                                       const model::SystemConfig& system,
                                                       const cstates::CalibrationSet& calibration,
                                                       const std::vector<double>& dirty_trace);

} // namespace burstlink::scenarios
