#pragma once

#include "burstlink/model.hpp"
#include "burstlink/states.hpp"
#include "burstlink/units.hpp"

#include <map>
#include <string>
#include <utility>

namespace burstlink::cstates {

enum class VdState : std::uint8_t { off, clock_gated, active };
enum class PanelState : std::uint8_t { streaming, psr, off };

/// Component activity that decides the package state (Table 1 conditions).
struct Activity {
    bool cores = false;        ///< cores executing instructions
    bool gpu = false;          ///< graphics engine executing
    VdState vd = VdState::off;
    bool dc = false;           ///< display controller powered
    bool edp_source = false;
    bool edp_sink = false;
    bool dram_traffic = false; ///< some agent is reading or writing DRAM
    DramState dram = DramState::self_refresh;
    PanelState panel = PanelState::psr;

    friend bool operator==(const Activity&, const Activity&) = default;
};

/// Representative activity of each state as listed in Table 1.
[[nodiscard]] Activity canonical_activity(PackageCState state);

/// Deepest state whose entry conditions hold for `activity`, never deeper
/// than `limit`. Throws Error(consistency) on contradictory vectors.
[[nodiscard]] PackageCState deepest_state(const Activity& activity,
                                          PackageCState limit = PackageCState::C10);

/// DRAM state implied by a package state under the default mapping.
[[nodiscard]] DramState dram_state_of(PackageCState state) noexcept;

struct StateSplit {
    double dram_background_mw = 0;
    double display_mw = 0;
    double others_mw = 0;
};

struct StatePower {
    double total_mw = 0;
    StateSplit split{};
};

struct TransitionSpec {
    Duration entry_latency{0};
    double entry_power_mw = 0;
    Duration exit_latency{0};
    double exit_power_mw = 0;
};

struct TransitionCost {
    Duration latency{0};
    double energy_j = 0;
};

struct PowerProfile {
    std::string name;
    std::map<PackageCState, StatePower> states;
    std::map<std::pair<PackageCState, PackageCState>, TransitionSpec> transitions;
    TransitionSpec default_transition{}; ///< used for pairs missing from `transitions`
    double drfb_active_power_adder_mw = 58;
    double vd_dynamic_power_mw = 95;    ///< C7 - C7P
    double fbc_compute_power_mw = 0;    ///< while compressing during decode
    double gpu_pipelined_power_mw = 0;  ///< pipelined projection inside C7 spans

    [[nodiscard]] bool has(PackageCState s) const { return states.count(s) != 0; }
    /// Throws Error(calibration) naming the state when missing.
    [[nodiscard]] const StatePower& at(PackageCState s) const;
    [[nodiscard]] double power_mw(PackageCState s) const { return at(s).total_mw; }
};

[[nodiscard]] TransitionCost transition_cost(const PowerProfile& profile, PackageCState from,
                                             PackageCState to);

/// Transition table where entering a listed state costs its entry spec and
/// leaving it towards a shallower state costs its exit spec.
[[nodiscard]] std::map<std::pair<PackageCState, PackageCState>, TransitionSpec>
make_transition_table(const std::map<PackageCState, TransitionSpec>& per_state);

/// Checks split sums and non-negativity. Throws Error(calibration).
void check_profile(const PowerProfile& profile);

struct CalibrationSet {
    std::string name;
    std::string description;
    model::SystemConfig system{};
    std::map<model::Scheme, PowerProfile> profiles;

    /// Throws Error(calibration) when the scheme has no profile.
    [[nodiscard]] const PowerProfile& profile_for(model::Scheme scheme) const;
};

/// The calibration compiled into the library from data/calibration/default.json.
[[nodiscard]] const CalibrationSet& default_calibration();

/// State-power-only variant: DRAM operating energy, adders and transition
/// costs are dropped so that averages come from residencies alone.
[[nodiscard]] CalibrationSet residency_only(const CalibrationSet& base);

} // namespace burstlink::cstates
