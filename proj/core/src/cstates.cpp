#include "burstlink/cstates.hpp"

#include "burstlink/calibration_io.hpp"
#include "burstlink/error.hpp"

#include <cmath>

namespace burstlink {

std::string_view to_string(PackageCState s) noexcept {
    switch (s) {
    case PackageCState::C0: return "C0";
    case PackageCState::C2: return "C2";
    case PackageCState::C3: return "C3";
    case PackageCState::C6: return "C6";
    case PackageCState::C7: return "C7";
    case PackageCState::C7P: return "C7P";
    case PackageCState::C8: return "C8";
    case PackageCState::C9: return "C9";
    case PackageCState::C10: return "C10";
    }
    return "C0";
}

std::optional<PackageCState> parse_state(std::string_view name) noexcept {
    for (auto s : kAllStates)
        if (to_string(s) == name) return s;
    if (name == "C7'") return PackageCState::C7P;
    return std::nullopt;
}

std::string_view to_string(DramState s) noexcept {
    switch (s) {
    case DramState::active: return "active";
    case DramState::fast_powerdown: return "fast_powerdown";
    case DramState::self_refresh: return "self_refresh";
    case DramState::off: return "off";
    }
    return "active";
}

std::optional<DramState> parse_dram_state(std::string_view name) noexcept {
    for (auto s : kAllDramStates)
        if (to_string(s) == name) return s;
    return std::nullopt;
}

} // namespace burstlink

namespace burstlink::cstates {

namespace detail {
extern const std::string_view default_calibration_json;
}

Activity canonical_activity(PackageCState state) {
    Activity a;
    const auto display_on = [&a] {
        a.dc = true;
        a.edp_source = true;
        a.edp_sink = true;
        a.panel = PanelState::streaming;
    };
    switch (state) {
    case PackageCState::C0:
        a.cores = true;
        a.dram = DramState::active;
        a.dram_traffic = true;
        a.vd = VdState::active;
        display_on();
        break;
    case PackageCState::C2:
        a.dram = DramState::active;
        a.dram_traffic = true;
        display_on();
        break;
    case PackageCState::C3:
    case PackageCState::C8:
        display_on();
        break;
    case PackageCState::C6:
    case PackageCState::C7:
        a.vd = VdState::active;
        display_on();
        break;
    case PackageCState::C7P:
        a.vd = VdState::clock_gated;
        display_on();
        break;
    case PackageCState::C9:
        a.panel = PanelState::psr;
        break;
    case PackageCState::C10:
        a.panel = PanelState::off;
        a.dram = DramState::off;
        break;
    }
    return a;
}

PackageCState deepest_state(const Activity& a, PackageCState limit) {
    const bool dram_up = a.dram == DramState::active;
    if (a.dram_traffic && !dram_up)
        throw Error(ErrorCode::consistency,
                    "DRAM traffic while DRAM is " + std::string(to_string(a.dram)));
    if ((a.cores || a.gpu) && !dram_up)
        throw Error(ErrorCode::consistency, "cores or GPU executing while DRAM is not active");
    if (a.edp_source && !a.dc)
        throw Error(ErrorCode::consistency, "eDP source on while the display controller is off");
    if (a.panel == PanelState::streaming && !(a.edp_source && a.edp_sink))
        throw Error(ErrorCode::consistency, "panel streaming without an active eDP link");
    if (a.edp_sink && a.panel == PanelState::off)
        throw Error(ErrorCode::consistency, "eDP sink on while the panel is off");

    PackageCState s;
    if (a.cores || a.gpu)
        s = PackageCState::C0;
    else if (a.dram == DramState::active || a.dram == DramState::fast_powerdown)
        s = PackageCState::C2;
    else if (a.vd == VdState::active)
        s = PackageCState::C7;
    else if (a.vd == VdState::clock_gated)
        s = PackageCState::C7P;
    else if (a.dc || a.edp_source || a.edp_sink)
        s = PackageCState::C8;
    else if (a.panel == PanelState::off)
        s = PackageCState::C10;
    else
        s = PackageCState::C9;

    if (deeper(s, limit) && s != PackageCState::C0)
        s = deeper(limit, PackageCState::C0) ? limit : PackageCState::C2;
    return s;
}

DramState dram_state_of(PackageCState state) noexcept {
    return (state == PackageCState::C0 || state == PackageCState::C2) ? DramState::active
                                                                      : DramState::self_refresh;
}

const StatePower& PowerProfile::at(PackageCState s) const {
    const auto it = states.find(s);
    if (it == states.end())
        throw Error(ErrorCode::calibration, "profile '" + name + "' has no power for state " +
                                                std::string(to_string(s)));
    return it->second;
}

TransitionCost transition_cost(const PowerProfile& profile, PackageCState from, PackageCState to) {
    const auto it = profile.transitions.find({from, to});
    const TransitionSpec& t = it != profile.transitions.end() ? it->second : profile.default_transition;
    TransitionCost c;
    c.latency = t.entry_latency + t.exit_latency;
    c.energy_j = t.entry_power_mw * 1e-3 * to_seconds(t.entry_latency) +
                 t.exit_power_mw * 1e-3 * to_seconds(t.exit_latency);
    return c;
}

std::map<std::pair<PackageCState, PackageCState>, TransitionSpec>
make_transition_table(const std::map<PackageCState, TransitionSpec>& per_state) {
    std::map<std::pair<PackageCState, PackageCState>, TransitionSpec> table;
    for (auto from : kAllStates) {
        for (auto to : kAllStates) {
            if (from == to) continue;
            TransitionSpec t;
            if (deeper(to, from)) {
                if (auto it = per_state.find(to); it != per_state.end()) {
                    t.entry_latency = it->second.entry_latency;
                    t.entry_power_mw = it->second.entry_power_mw;
                }
            } else if (auto it = per_state.find(from); it != per_state.end()) {
                t.exit_latency = it->second.exit_latency;
                t.exit_power_mw = it->second.exit_power_mw;
            }
            if (t.entry_latency.count() || t.exit_latency.count()) table[{from, to}] = t;
        }
    }
    return table;
}

void check_profile(const PowerProfile& p) {
    const auto fail = [&p](const std::string& what) {
        throw Error(ErrorCode::calibration, "profile '" + p.name + "': " + what);
    };
    for (const auto& [state, sp] : p.states) {
        const auto& s = sp.split;
        const std::string name(to_string(state));
        if (!(sp.total_mw >= 0) || !(s.dram_background_mw >= 0) || !(s.display_mw >= 0) ||
            !(s.others_mw >= 0))
            fail("negative power in state " + name);
        if (std::abs(s.dram_background_mw + s.display_mw + s.others_mw - sp.total_mw) > 0.5)
            fail("split of state " + name + " does not sum to its total");
    }
    for (const auto& [pair, t] : p.transitions)
        if (t.entry_power_mw < 0 || t.exit_power_mw < 0 || t.entry_latency.count() < 0 ||
            t.exit_latency.count() < 0)
            fail("negative transition cost");
    if (p.drfb_active_power_adder_mw < 0 || p.vd_dynamic_power_mw < 0 ||
        p.fbc_compute_power_mw < 0 || p.gpu_pipelined_power_mw < 0)
        fail("negative power adder");
}

const PowerProfile& CalibrationSet::profile_for(model::Scheme scheme) const {
    const auto it = profiles.find(scheme);
    if (it == profiles.end())
        throw Error(ErrorCode::calibration, "calibration '" + name + "' has no profile for " +
                                                std::string(model::to_string(scheme)));
    return it->second;
}

const CalibrationSet& default_calibration() {
    static const CalibrationSet set = parse_calibration(detail::default_calibration_json);
    return set;
}

CalibrationSet residency_only(const CalibrationSet& base) {
    CalibrationSet out = base;
    out.name = base.name + "/residency-only";
    out.system.dram.coeff_read = 0;
    out.system.dram.coeff_write = 0;
    for (auto& [scheme, p] : out.profiles) {
        p.transitions.clear();
        p.default_transition = {};
        p.drfb_active_power_adder_mw = 0;
        p.fbc_compute_power_mw = 0;
        p.gpu_pipelined_power_mw = 0;
    }
    return out;
}

} // namespace burstlink::cstates
