#pragma once

#include "burstlink/cstates.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burstlink::calibrate {

struct MeasuredRun {
    std::string label;
    std::map<PackageCState, double> residencies; ///< sums to <= 1, remainder is transitions
    double measured_avg_power_mw = 0;
    std::optional<double> dram_bandwidth;        ///< bytes/s
};

struct FitResult {
    std::vector<PackageCState> states;
    std::map<PackageCState, double> power_mw;
    std::vector<double> residuals_mw; ///< measured - predicted, per run
    double rms_residual_mw = 0;

    /// Profile with the fitted totals. Splits are copied from `split_source`
    /// when it has the state and the split still fits; otherwise the whole
    /// power is attributed to "others".
    [[nodiscard]] cstates::PowerProfile to_profile(std::string name,
                                                   const cstates::PowerProfile* split_source = nullptr) const;
};

/// Non-negative least squares fit of measured_avg ~ sum_i P_i * R_i.
/// Throws Error(under_determined) naming the states that cannot be identified.
[[nodiscard]] FitResult fit_state_powers(const std::vector<MeasuredRun>& runs,
                                         const std::vector<PackageCState>& states);

struct Accuracy {
    double overall_percent = 0;
    std::map<PackageCState, double> per_state_percent; ///< over runs with > 50% residency
    std::map<PackageCState, std::size_t> per_state_runs;
};

[[nodiscard]] double predicted_power_mw(const cstates::PowerProfile& profile, const MeasuredRun& run);
[[nodiscard]] Accuracy model_accuracy(const cstates::PowerProfile& profile,
                                      const std::vector<MeasuredRun>& runs);

/// Synthetic runs from a known profile. Each run is dominated by one state
/// (cycling through `states`); `noise` is the standard deviation of the
/// multiplicative error applied to the measured power.
[[nodiscard]] std::vector<MeasuredRun> generate_runs(const cstates::PowerProfile& profile,
                                                     const std::vector<PackageCState>& states,
                                                     std::size_t count, double noise,
                                                     std::uint64_t seed);

/// CSV: label, one column per state, power_mw, optional bw.
[[nodiscard]] std::vector<MeasuredRun> parse_runs_csv(std::string_view csv);
[[nodiscard]] std::vector<MeasuredRun> load_runs_csv(const std::filesystem::path& path);
[[nodiscard]] std::string runs_to_csv(const std::vector<MeasuredRun>& runs,
                                      const std::vector<PackageCState>& states);

/// States that appear with nonzero residency in any run, in lattice order.
[[nodiscard]] std::vector<PackageCState> states_in(const std::vector<MeasuredRun>& runs);

} // namespace burstlink::calibrate
