#pragma once

#include "burstlink/cstates.hpp"
#include "burstlink/model.hpp"

#include <string>
#include <vector>

namespace burstlink::crosscheck {

/// Analytic builders against the fixed-tick oracle for one workload.
struct Deviation {
    std::string label;
    double max_residency_pp = 0;      ///< largest per-state residency gap, percentage points
    double max_window_energy_rel = 0; ///< largest per-window energy gap, relative
    double total_energy_rel = 0;
};

[[nodiscard]] Deviation compare_with_oracle(const model::WorkloadSpec& workload,
                                            const model::SystemConfig& system,
                                            const cstates::CalibrationSet& calibration,
                                            Duration tick = Duration{1000});

struct GridCase {
    std::string label;
    model::WorkloadSpec workload;
};

/// 32 planar cases (every resolution, 30/60 FPS, every scheme) and 18 VR
/// cases (FHD/QHD/4K, 30/60 FPS, baseline/bursting_only/burstlink).
[[nodiscard]] std::vector<GridCase> oracle_grid(std::uint32_t windows = 4);

} // namespace burstlink::crosscheck
