#include "burstlink/power.hpp"

#include "burstlink/error.hpp"

#include <cmath>

namespace burstlink::power {

using timeline::IntervalKind;
using timeline::WindowTimeline;

Bytes TrafficSummary::total_read() const noexcept {
    Bytes s = 0;
    for (auto b : read_bytes) s += b;
    return s;
}

Bytes TrafficSummary::total_write() const noexcept {
    Bytes s = 0;
    for (auto b : write_bytes) s += b;
    return s;
}

Duration TrafficSummary::total_time() const noexcept {
    Duration s{0};
    for (auto t : time) s += t;
    return s;
}

ComponentEnergy& ComponentEnergy::operator+=(const ComponentEnergy& o) noexcept {
    dram_j += o.dram_j;
    display_j += o.display_j;
    others_j += o.others_j;
    total_j += o.total_j;
    return *this;
}

ComponentEnergy ComponentEnergy::scaled(double f) const noexcept {
    return {dram_j * f, display_j * f, others_j * f, total_j * f};
}

namespace {

/// Power of an interval: the shallower side of a transition span, the state
/// power otherwise.
PackageCState power_state(const timeline::Interval& iv) {
    if (iv.kind == IntervalKind::transition)
        return deeper(iv.state, iv.from) ? iv.from : iv.state;
    return iv.state;
}

double adders_mw(const timeline::Interval& iv, const cstates::PowerProfile& p) {
    double mw = 0;
    if (iv.drfb_active) mw += p.drfb_active_power_adder_mw;
    if (iv.compressing) mw += p.fbc_compute_power_mw;
    if (iv.projecting) mw += p.gpu_pipelined_power_mw;
    return mw;
}

void add_traffic(TrafficSummary& t, const WindowTimeline& w) {
    for (const auto& iv : w.intervals) {
        const auto d = index(cstates::dram_state_of(power_state(iv)));
        t.read_bytes[d] += iv.dram_read();
        t.write_bytes[d] += iv.dram_write();
        t.time[d] += iv.span();
    }
}

} // namespace

TrafficSummary traffic_summary(std::span<const WindowTimeline> timelines) {
    TrafficSummary t;
    for (const auto& w : timelines) add_traffic(t, w);
    return t;
}

DramEnergy dram_energy_parts(const TrafficSummary& traffic, const model::SystemConfig& system) {
    DramEnergy e;
    for (auto d : kAllDramStates)
        e.background_j += system.dram.background_mw[index(d)] * 1e-3 * to_seconds(traffic.time[index(d)]);
    e.operating_j = system.dram.coeff_read * static_cast<double>(traffic.total_read()) +
                    system.dram.coeff_write * static_cast<double>(traffic.total_write());
    return e;
}

double dram_energy(const TrafficSummary& traffic, const model::SystemConfig& system) {
    return dram_energy_parts(traffic, system).total_j();
}

double average_power(const cstates::PowerProfile& profile, const timeline::Residencies& r,
                     std::span<const timeline::TransitionEvent> transitions, Seconds total_time) {
    double mw = 0;
    for (auto s : kAllStates) {
        const double f = r[s];
        if (f == 0) continue;
        mw += profile.power_mw(s) * f;
    }
    if (!transitions.empty()) {
        if (!(total_time.count() > 0))
            throw Error(ErrorCode::invalid_config, "transition events need a positive total time");
        double j = 0;
        for (const auto& ev : transitions) j += cstates::transition_cost(profile, ev.from, ev.to).energy_j;
        mw += j / total_time.count() * 1e3;
    }
    return mw;
}

EnergyReport window_energy_breakdown(const WindowTimeline& w, const cstates::PowerProfile& profile,
                                     const model::SystemConfig& system) {
    EnergyReport r;
    r.scheme = std::string(model::to_string(w.scheme));
    r.profile = profile.name;
    r.windows = 1;
    r.simulated_seconds = to_seconds(w.duration);

    double state_j = 0, display_j = 0, adder_j = 0;
    for (const auto& iv : w.intervals) {
        const double s = to_seconds(iv.span());
        const auto& sp = profile.at(power_state(iv));
        state_j += sp.total_mw * 1e-3 * s;
        display_j += sp.split.display_mw * 1e-3 * s;
        if (iv.drfb_active) display_j += profile.drfb_active_power_adder_mw * 1e-3 * s;
        adder_j += adders_mw(iv, profile) * 1e-3 * s;
        r.edp_bytes += iv.edp_bytes;
    }
    for (const auto& ev : w.transitions)
        r.transition_energy_j += cstates::transition_cost(profile, ev.from, ev.to).energy_j;
    r.transition_count = w.transitions.size();

    add_traffic(r.traffic, w);
    r.dram = dram_energy_parts(r.traffic, system);

    ComponentEnergy e;
    e.total_j = state_j + adder_j + r.transition_energy_j + r.dram.operating_j;
    e.dram_j = r.dram.total_j();
    e.display_j = display_j;
    e.others_j = e.total_j - e.dram_j - e.display_j;
    if (e.others_j < -1e-9 * std::max(1.0, e.total_j))
        throw Error(ErrorCode::calibration,
                    "profile '" + profile.name +
                        "': DRAM background and display split exceed the state power");
    r.total = e;
    r.per_window = e;
    r.per_second = e.scaled(1.0 / r.simulated_seconds);
    r.average_power_mw = e.total_j / r.simulated_seconds * 1e3;
    const std::array<WindowTimeline, 1> one{w};
    r.residencies = timeline::residencies(one);
    r.windows_energy.push_back(e);
    return r;
}

namespace {

void merge_into(EnergyReport& acc, const EnergyReport& w) {
    acc.windows += w.windows;
    acc.simulated_seconds += w.simulated_seconds;
    acc.transition_count += w.transition_count;
    acc.transition_energy_j += w.transition_energy_j;
    acc.total += w.total;
    acc.dram.background_j += w.dram.background_j;
    acc.dram.operating_j += w.dram.operating_j;
    for (std::size_t i = 0; i < 4; ++i) {
        acc.traffic.read_bytes[i] += w.traffic.read_bytes[i];
        acc.traffic.write_bytes[i] += w.traffic.write_bytes[i];
        acc.traffic.time[i] += w.traffic.time[i];
    }
    acc.edp_bytes += w.edp_bytes;
    acc.windows_energy.push_back(w.total);
}

void finish(EnergyReport& r, std::span<const WindowTimeline> timelines) {
    r.residencies = timeline::residencies(timelines);
    const double seconds = to_seconds(r.residencies.total);
    r.simulated_seconds = seconds;
    if (r.windows > 0) r.per_window = r.total.scaled(1.0 / static_cast<double>(r.windows));
    if (seconds > 0) {
        r.per_second = r.total.scaled(1.0 / seconds);
        r.average_power_mw = r.total.total_j / seconds * 1e3;
    }
}

} // namespace

EnergyReport energy_breakdown(std::span<const WindowTimeline> timelines,
                              const cstates::PowerProfile& profile,
                              const model::SystemConfig& system) {
    EnergyReport r;
    r.profile = profile.name;
    if (!timelines.empty()) r.scheme = std::string(model::to_string(timelines.front().scheme));
    for (const auto& w : timelines) merge_into(r, window_energy_breakdown(w, profile, system));
    finish(r, timelines);
    return r;
}

double timeline_average_power(std::span<const WindowTimeline> timelines,
                              const cstates::PowerProfile& profile,
                              const model::SystemConfig& system) {
    double j = 0;
    std::int64_t ns = 0;
    for (const auto& w : timelines) {
        for (const auto& iv : w.intervals) {
            const double mw = profile.power_mw(power_state(iv)) + adders_mw(iv, profile);
            j += mw * 1e-3 * to_seconds(iv.span());
            j += system.dram.coeff_read * static_cast<double>(iv.dram_read());
            j += system.dram.coeff_write * static_cast<double>(iv.dram_write());
        }
        for (const auto& ev : w.transitions)
            j += cstates::transition_cost(profile, ev.from, ev.to).energy_j;
        ns += w.duration.count();
    }
    return ns > 0 ? j / (static_cast<double>(ns) * 1e-9) * 1e3 : 0.0;
}

EnergyReport report_for(std::span<const WindowTimeline> timelines, const model::WorkloadSpec& workload,
                        const model::SystemConfig& system,
                        const cstates::CalibrationSet& calibration) {
    EnergyReport r;
    r.scheme = std::string(model::to_string(workload.scheme));
    r.calibration = calibration.name;
    r.profile = calibration.profile_for(workload.scheme).name;
    bool fallback = false;
    for (const auto& w : timelines) {
        fallback = fallback || w.scheme != workload.scheme;
        merge_into(r, window_energy_breakdown(w, calibration.profile_for(w.scheme), system));
    }
    finish(r, timelines);
    if (fallback)
        r.notes.push_back("some windows fell back to the conventional display path");
    if (workload.kind == model::VideoKind::vr360 && model::bypasses_dram(workload.scheme))
        r.notes.push_back("pipelined projection inside streaming spans is a modeling extension");
    if (system.dram.coeff_read > 0 || system.dram.coeff_write > 0)
        r.notes.push_back("DRAM coefficients are fitted calibration values, not measurements");
    return r;
}

EnergyReport streaming_report(const model::WorkloadSpec& workload, const model::SystemConfig& system,
                              const cstates::CalibrationSet& calibration,
                              const StreamingOptions& options) {
    const auto timelines = timeline::build_timelines(workload, system);
    auto r = report_for(timelines, workload, system, calibration);
    if (options.reference) {
        Reduction red;
        red.reference_scheme = std::string(model::to_string(*options.reference));
        if (*options.reference == workload.scheme) {
            red.reference_energy_j = r.per_second.total_j;
        } else {
            auto ref = workload;
            ref.scheme = *options.reference;
            const auto ref_t = timeline::build_timelines(ref, system);
            red.reference_energy_j = report_for(ref_t, ref, system, calibration).per_second.total_j;
        }
        red.percent = 100.0 * (1.0 - r.per_second.total_j / red.reference_energy_j);
        r.reduction = red;
    }
    return r;
}

} // namespace burstlink::power
