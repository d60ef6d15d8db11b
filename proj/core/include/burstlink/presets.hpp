#pragma once

#include "burstlink/cstates.hpp"
#include "burstlink/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burstlink::presets {

/// One simulation point: workload, calibration (whose `system` is used) and
/// the reference scheme for the reduction column.
struct Preset {
    std::string name;
    std::string description;
    model::WorkloadSpec workload;
    cstates::CalibrationSet calibration;
    std::optional<model::Scheme> reference = model::Scheme::baseline;
};

/// Axes of a parameter sweep. Every combination is one grid point.
struct SweepGrid {
    std::vector<model::Resolution> resolutions{model::kFHD};
    std::vector<std::uint32_t> fps{30};
    std::vector<model::Scheme> schemes{model::Scheme::baseline};
    std::vector<model::VideoKind> kinds{model::VideoKind::planar};
    std::vector<double> fbc_ratios{1.0};
    std::vector<std::uint32_t> batch_frames{1};
    std::uint32_t refresh_hz = 60;
    std::uint32_t windows = 60;
};

struct GridPoint {
    model::WorkloadSpec workload;
    std::string label; ///< "<res>/<fps>/<kind>/<scheme>/fbc=<r>/batch=<b>"
};

/// Deterministic order: resolution, fps, kind, scheme, fbc, batch.
[[nodiscard]] std::vector<GridPoint> expand(const SweepGrid& grid,
                                            const model::WorkloadSpec& base = {});

struct SweepPreset {
    std::string name;
    std::string description;
    SweepGrid grid;
};

[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] std::vector<std::string> sweep_names();

/// Throws Error(input) for unknown names.
[[nodiscard]] Preset preset(std::string_view name);
[[nodiscard]] SweepPreset sweep(std::string_view name);

/// Calibration used by the `table2-*` presets: residency-only state powers and
/// pipeline rates chosen so the FHD/30 timelines land on the
/// reference residencies.
[[nodiscard]] const cstates::CalibrationSet& table2_calibration();

} // namespace burstlink::presets
