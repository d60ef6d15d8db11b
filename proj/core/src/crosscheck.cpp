#include "burstlink/crosscheck.hpp"

#include "burstlink/power.hpp"
#include "burstlink/timeline.hpp"

#include <algorithm>
#include <cmath>

namespace burstlink::crosscheck {

Deviation compare_with_oracle(const model::WorkloadSpec& w, const model::SystemConfig& sys,
                              const cstates::CalibrationSet& cal, Duration tick) {
    const auto analytic = timeline::build_timelines(w, sys);
    const auto oracle = timeline::oracle_simulate(w, sys, tick);

    Deviation d;
    const auto ra = timeline::residencies(analytic);
    const auto ro = timeline::residencies(oracle);
    for (auto s : kAllStates)
        d.max_residency_pp = std::max(d.max_residency_pp, 100.0 * std::abs(ra[s] - ro[s]));

    const auto ea = power::report_for(analytic, w, sys, cal);
    const auto eo = power::report_for(oracle, w, sys, cal);
    for (std::size_t i = 0; i < ea.windows_energy.size(); ++i) {
        const double a = ea.windows_energy[i].total_j;
        const double o = eo.windows_energy[i].total_j;
        d.max_window_energy_rel = std::max(d.max_window_energy_rel, std::abs(a - o) / a);
    }
    d.total_energy_rel = std::abs(ea.total.total_j - eo.total.total_j) / ea.total.total_j;
    return d;
}

std::vector<GridCase> oracle_grid(std::uint32_t windows) {
    std::vector<GridCase> out;
    const auto add = [&](model::Resolution r, std::uint32_t fps, model::Scheme s, model::VideoKind k) {
        model::WorkloadSpec w;
        w.display.resolution = r;
        w.video_fps = fps;
        w.scheme = s;
        w.kind = k;
        w.windows_to_simulate = windows;
        out.push_back({model::resolution_name(r) + "/" + std::to_string(fps) + "/" +
                           std::string(model::to_string(k)) + "/" + std::string(model::to_string(s)),
                       w});
    };
    for (auto r : {model::kFHD, model::kQHD, model::k4K, model::k5K})
        for (std::uint32_t fps : {30u, 60u})
            for (auto s : model::kAllSchemes) add(r, fps, s, model::VideoKind::planar);
    for (auto r : {model::kFHD, model::kQHD, model::k4K})
        for (std::uint32_t fps : {30u, 60u})
            for (auto s : {model::Scheme::baseline, model::Scheme::bursting_only, model::Scheme::burstlink})
                add(r, fps, s, model::VideoKind::vr360);
    return out;
}

} // namespace burstlink::crosscheck
