#include "burstlink/presets.hpp"

#include "burstlink/error.hpp"
#include "burstlink/timeline.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace burstlink::presets {

using model::Scheme;
using model::VideoKind;

namespace {

model::WorkloadSpec workload(model::Resolution r, std::uint32_t fps, Scheme s,
                             VideoKind kind = VideoKind::planar) {
    model::WorkloadSpec w;
    w.kind = kind;
    w.video_fps = fps;
    w.display.resolution = r;
    w.scheme = s;
    return w;
}

double residency_of(const model::WorkloadSpec& w, const model::SystemConfig& sys, PackageCState s) {
    const auto t = timeline::build_timelines(w, sys);
    return timeline::residencies(t)[s];
}

cstates::CalibrationSet make_table2() {
    auto cal = cstates::residency_only(cstates::default_calibration());
    cal.name = "table2";
    cal.description = "reference state powers only; rates set for 9/11/80 and 2/19/79 residencies";
    auto& sys = cal.system;
    const Bytes frame = model::frame_bytes(model::kFHD, 24);
    const Duration window = model::frame_window(60);

    // Six percent of the window for orchestration and six for decode gives
    // 9% C0 averaged over a decode window and a refresh window.
    sys.orchestration_time = Duration{window.count() * 6 / 100};
    sys.decode_rate = static_cast<double>(frame) / to_seconds(sys.orchestration_time);

    // Burst of 38% of the window, decode-bound, after a 2% orchestration in
    // both the decode and the repeat window.
    sys.bypass_orchestration_time = Duration{window.count() * 2 / 100};
    sys.repeat_orchestration_time = sys.bypass_orchestration_time;
    sys.stream_decode_rate = static_cast<double>(frame) / (0.38 * to_seconds(window));

    // Fetch bandwidth: C2 residency falls as the fetch gets faster.
    auto w = workload(model::kFHD, 30, Scheme::baseline);
    w.windows_to_simulate = 2;
    double lo = 1e9, hi = 40e9;
    for (int i = 0; i < 60; ++i) {
        const double mid = std::sqrt(lo * hi);
        sys.dram_fetch_bandwidth = mid;
        if (residency_of(w, sys, PackageCState::C2) > 0.11)
            lo = mid;
        else
            hi = mid;
    }
    sys.dram_fetch_bandwidth = std::sqrt(lo * hi);
    return cal;
}

struct Entry {
    std::string description;
    std::function<Preset()> make;
};

Preset with_default(std::string name, std::string description, model::WorkloadSpec w) {
    return Preset{std::move(name), std::move(description), std::move(w), cstates::default_calibration(),
                  Scheme::baseline};
}

const std::map<std::string, Entry, std::less<>>& registry() {
    static const auto r = [] {
        std::map<std::string, Entry, std::less<>> m;
        const auto add = [&m](std::string name, std::string description, std::function<Preset()> make) {
            m.emplace(std::move(name), Entry{std::move(description), std::move(make)});
        };
        const auto add_default = [&](std::string name, std::string description, model::WorkloadSpec w) {
            add(name, description, [=] { return with_default(name, description, w); });
        };

        for (auto s : {Scheme::baseline, Scheme::burstlink}) {
            const std::string name = "table2-" + std::string(s == Scheme::baseline ? "baseline" : "burstlink");
            const std::string description = "FHD 30FPS on a 60 Hz panel, residency-only reference calibration";
            add(name, description, [=] {
                Preset p{name, description, workload(model::kFHD, 30, s), table2_calibration(), Scheme::baseline};
                p.workload.windows_to_simulate = 2;
                return p;
            });
        }

        const std::pair<const char*, model::Resolution> res[] = {
            {"fhd", model::kFHD}, {"qhd", model::kQHD}, {"4k", model::k4K}, {"5k", model::k5K}};
        for (const auto& [tag, r] : res)
            for (std::uint32_t fps : {30u, 60u})
                for (auto s : model::kAllSchemes)
                    add_default(std::string(tag) + "-" + std::to_string(fps) + "-" + std::string(model::to_string(s)),
                                model::resolution_name(r) + " " + std::to_string(fps) + "FPS planar video, " +
                                    std::string(model::to_string(s)),
                                workload(r, fps, s));

        for (const auto& [tag, r] : res)
            for (std::uint32_t fps : {30u, 60u})
                for (auto s : {Scheme::baseline, Scheme::burstlink})
                    add_default("vr-" + std::string(tag) + "-" + std::to_string(fps) + "-" +
                                    std::string(model::to_string(s)),
                                model::resolution_name(r) + " " + std::to_string(fps) +
                                    "FPS 360-degree video with projection, " + std::string(model::to_string(s)),
                                workload(r, fps, s, VideoKind::vr360));

        {
            auto w = workload(model::k4K, 60, Scheme::baseline);
            w.overlay.fbc_ratio = 0.5;
            add_default("fig12-4k-fbc50", "4K 60FPS baseline with 50% frame-buffer compression", w);
        }
        {
            auto w = workload(model::k4K, 60, Scheme::baseline);
            w.overlay.batch_frames = 4;
            add_default("batching-4k", "4K 60FPS baseline decoding four frames per batch", w);
        }
        {
            auto w = workload(model::k4K, 60, Scheme::burstlink);
            w.overlay.windowed = model::WindowedVideo{0.25, 4, 128};
            add_default("windowed-4k-burstlink",
                        "4K 60FPS windowed video covering a quarter of the panel, selective update", w);
        }
        return m;
    }();
    return r;
}

std::string format_ratio(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

} // namespace

const cstates::CalibrationSet& table2_calibration() {
    static const cstates::CalibrationSet cal = make_table2();
    return cal;
}

std::vector<GridPoint> expand(const SweepGrid& g, const model::WorkloadSpec& base) {
    std::vector<GridPoint> out;
    for (auto r : g.resolutions)
        for (auto fps : g.fps)
            for (auto kind : g.kinds)
                for (auto s : g.schemes)
                    for (auto fbc : g.fbc_ratios)
                        for (auto batch : g.batch_frames) {
                            GridPoint p;
                            p.workload = base;
                            p.workload.display.resolution = r;
                            p.workload.display.refresh_hz = g.refresh_hz;
                            p.workload.video_fps = fps;
                            p.workload.kind = kind;
                            p.workload.scheme = s;
                            p.workload.overlay.fbc_ratio = fbc;
                            p.workload.overlay.batch_frames = batch;
                            p.workload.windows_to_simulate = g.windows;
                            p.label = model::resolution_name(r) + "/" + std::to_string(fps) + "/" +
                                      std::string(model::to_string(kind)) + "/" +
                                      std::string(model::to_string(s)) + "/fbc=" + format_ratio(fbc) +
                                      "/batch=" + std::to_string(batch);
                            out.push_back(std::move(p));
                        }
    return out;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, e] : registry()) names.push_back(name);
    return names;
}

Preset preset(std::string_view name) {
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) throw Error(ErrorCode::input, "unknown preset '" + std::string(name) + "'");
    return it->second.make();
}

namespace {

const std::map<std::string, SweepPreset, std::less<>>& sweeps() {
    static const auto m = [] {
        std::map<std::string, SweepPreset, std::less<>> s;
        const std::vector<model::Resolution> all{model::kFHD, model::kQHD, model::k4K, model::k5K};
        const std::vector<Scheme> schemes(model::kAllSchemes.begin(), model::kAllSchemes.end());

        SweepGrid fig8;
        fig8.resolutions = all;
        fig8.fps = {30, 60};
        fig8.schemes = schemes;
        s.emplace("fig8", SweepPreset{"fig8", "planar video, every resolution, 30 and 60 FPS, every scheme", fig8});

        SweepGrid vr = fig8;
        vr.resolutions = {model::kFHD, model::kQHD, model::k4K};
        vr.kinds = {VideoKind::vr360};
        vr.schemes = {Scheme::baseline, Scheme::bursting_only, Scheme::burstlink};
        s.emplace("vr", SweepPreset{"vr", "360-degree video with projection, FHD to 4K", vr});

        SweepGrid fig12;
        fig12.resolutions = all;
        fig12.fps = {60};
        fig12.fbc_ratios = {1.0, 0.5};
        s.emplace("fig12", SweepPreset{"fig12", "baseline with and without 50% frame-buffer compression", fig12});

        SweepGrid batching;
        batching.resolutions = all;
        batching.fps = {60};
        batching.batch_frames = {1, 4};
        s.emplace("batching", SweepPreset{"batching", "baseline with and without four-frame decode batching", batching});
        return s;
    }();
    return m;
}

} // namespace

std::vector<std::string> sweep_names() {
    std::vector<std::string> names;
    for (const auto& [name, e] : sweeps()) names.push_back(name);
    return names;
}

SweepPreset sweep(std::string_view name) {
    const auto it = sweeps().find(name);
    if (it == sweeps().end()) throw Error(ErrorCode::input, "unknown sweep preset '" + std::string(name) + "'");
    return it->second;
}

} // namespace burstlink::presets
