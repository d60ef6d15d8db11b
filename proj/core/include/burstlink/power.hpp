#pragma once

#include "burstlink/cstates.hpp"
#include "burstlink/model.hpp"
#include "burstlink/timeline.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace burstlink::power {

struct TrafficSummary {
    std::array<Bytes, 4> read_bytes{};  ///< indexed by DramState
    std::array<Bytes, 4> write_bytes{};
    std::array<Duration, 4> time{};

    [[nodiscard]] Bytes total_read() const noexcept;
    [[nodiscard]] Bytes total_write() const noexcept;
    [[nodiscard]] Duration total_time() const noexcept;
};

/// DRAM state of each interval follows the package state (C0/C2 active,
/// deeper states self-refresh) unless `deepest_allowed` pins otherwise.
[[nodiscard]] TrafficSummary traffic_summary(std::span<const timeline::WindowTimeline> timelines);

struct ComponentEnergy {
    double dram_j = 0;
    double display_j = 0;
    double others_j = 0;
    double total_j = 0;

    ComponentEnergy& operator+=(const ComponentEnergy& o) noexcept;
    [[nodiscard]] ComponentEnergy scaled(double f) const noexcept;
};

struct DramEnergy {
    double background_j = 0;
    double operating_j = 0;
    [[nodiscard]] double total_j() const noexcept { return background_j + operating_j; }
};

[[nodiscard]] DramEnergy dram_energy_parts(const TrafficSummary& traffic,
                                           const model::SystemConfig& system);
[[nodiscard]] double dram_energy(const TrafficSummary& traffic, const model::SystemConfig& system);

/// Sum of P_Ci * R_Ci plus transition energy spread over `total_time`.
[[nodiscard]] double average_power(const cstates::PowerProfile& profile,
                                   const timeline::Residencies& residencies,
                                   std::span<const timeline::TransitionEvent> transitions,
                                   Seconds total_time);

struct Reduction {
    std::string reference_scheme;
    double reference_energy_j = 0; ///< per second
    double percent = 0;            ///< 100 * (1 - E / E_ref)
};

struct EnergyReport {
    std::string scheme;
    std::string calibration;
    std::string profile;
    std::uint64_t windows = 0;
    double simulated_seconds = 0;
    double average_power_mw = 0;
    timeline::Residencies residencies{};
    std::uint64_t transition_count = 0;
    double transition_energy_j = 0;
    ComponentEnergy total{};
    ComponentEnergy per_window{};
    ComponentEnergy per_second{};
    DramEnergy dram{};
    TrafficSummary traffic{};
    Bytes edp_bytes = 0;
    std::vector<ComponentEnergy> windows_energy;
    std::optional<Reduction> reduction;
    std::vector<std::string> notes;
};

/// Energy of one window. Throws Error(calibration) when the split leaves a
/// negative remainder for "others".
[[nodiscard]] EnergyReport window_energy_breakdown(const timeline::WindowTimeline& timeline,
                                                   const cstates::PowerProfile& profile,
                                                   const model::SystemConfig& system);

/// Aggregate over many windows.
[[nodiscard]] EnergyReport energy_breakdown(std::span<const timeline::WindowTimeline> timelines,
                                            const cstates::PowerProfile& profile,
                                            const model::SystemConfig& system);

/// Time-weighted mean of interval powers straight from the timeline.
[[nodiscard]] double timeline_average_power(std::span<const timeline::WindowTimeline> timelines,
                                            const cstates::PowerProfile& profile,
                                            const model::SystemConfig& system);

struct StreamingOptions {
    std::optional<model::Scheme> reference = model::Scheme::baseline;
};

/// Builds timelines for the workload, evaluates them with the profile the
/// calibration assigns to the scheme, and compares against the reference.
[[nodiscard]] EnergyReport streaming_report(const model::WorkloadSpec& workload,
                                            const model::SystemConfig& system,
                                            const cstates::CalibrationSet& calibration,
                                            const StreamingOptions& options = {});

/// Same, with timelines already built.
[[nodiscard]] EnergyReport report_for(std::span<const timeline::WindowTimeline> timelines,
                                      const model::WorkloadSpec& workload,
                                      const model::SystemConfig& system,
                                      const cstates::CalibrationSet& calibration);

} // namespace burstlink::power
