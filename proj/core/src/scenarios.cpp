#include "burstlink/scenarios.hpp"

#include "burstlink/error.hpp"
#include "burstlink/plan.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace burstlink::scenarios {

using model::Scheme;

OverlayResult apply_fbc(const model::WorkloadSpec& workload, double fbc_ratio) {
    if (!(fbc_ratio > 0 && fbc_ratio <= 1))
        throw Error(ErrorCode::invalid_config, "fbc_ratio must be in (0, 1]");
    OverlayResult r{workload, {}};
    if (model::bypasses_dram(workload.scheme)) {
        r.warnings.push_back("fbc ignored: " + std::string(model::to_string(workload.scheme)) +
                             " keeps decoded frames out of DRAM");
        return r;
    }
    r.workload.overlay.fbc_ratio = fbc_ratio;
    return r;
}

OverlayResult apply_batching(const model::WorkloadSpec& workload, const model::SystemConfig& system,
                             std::uint32_t batch_frames, double cached_fraction, double decode_boost) {
    if (batch_frames == 0) throw Error(ErrorCode::invalid_config, "batch_frames must be >= 1");
    OverlayResult r{workload, {}};
    if (model::bypasses_dram(workload.scheme)) {
        r.warnings.push_back("batching ignored: " + std::string(model::to_string(workload.scheme)) +
                             " does not buffer decoded frames in DRAM");
        return r;
    }
    const Bytes frame = model::frame_bytes(workload.display.resolution, workload.display.bits_per_pixel);
    if (Bytes{batch_frames} * frame > system.dram_capacity_bytes)
        throw Error(ErrorCode::infeasible_config, "DRAM cannot hold " + std::to_string(batch_frames) +
                                                      " decoded frames");
    auto& o = r.workload.overlay;
    o.batch_frames = batch_frames;
    o.batch_cached_fraction = cached_fraction;
    o.batch_decode_boost = decode_boost;
    return r;
}

Bytes selective_update_bytes(const model::DisplayConfig& display, double dirty_fraction,
                             Bytes header_bytes) {
    if (!display.panel_psr2_capable)
        throw Error(ErrorCode::unsupported_scheme, "panel does not support PSR2 selective update");
    if (!(dirty_fraction >= 0 && dirty_fraction <= 1))
        throw Error(ErrorCode::invalid_config, "dirty_fraction must be in [0, 1]");
    const Bytes frame = model::frame_bytes(display.resolution, display.bits_per_pixel);
    if (dirty_fraction == 1.0) return frame;
    return static_cast<Bytes>(std::llround(static_cast<double>(frame) * dirty_fraction)) + header_bytes;
}

Scheme select_scheme(const model::PlaneFlags& f, Scheme requested,
                     const model::DisplayConfig& display) noexcept {
    if (!model::bypasses_dram(requested)) return requested;
    const bool eligible = f.video_plane_only && f.single_video && !f.graphics_interrupt &&
                          !f.user_input_interrupt && !f.multiple_displays && display.drfb_present;
    return eligible ? requested : Scheme::baseline;
}

std::vector<double> parse_dirty_trace(std::string_view csv) {
    std::vector<double> trace;
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (trace.empty() && !header_seen && line.find("window") != std::string::npos) {
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorCode::input, "trace line " + std::to_string(line_no) + ": expected 2 columns");
        std::uint64_t window = 0;
        const auto w = std::string_view(line).substr(0, comma);
        if (std::from_chars(w.data(), w.data() + w.size(), window).ec != std::errc{} ||
            window != trace.size())
            throw Error(ErrorCode::input,
                        "trace line " + std::to_string(line_no) + ": window indices must be 0, 1, 2, ...");
        double dirty = 0;
        try {
            dirty = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::input, "trace line " + std::to_string(line_no) + ": bad dirty_fraction");
        }
        if (!(dirty >= 0 && dirty <= 1))
            throw Error(ErrorCode::input,
                        "trace line " + std::to_string(line_no) + ": dirty_fraction outside [0, 1]");
        trace.push_back(dirty);
    }
    if (trace.empty()) throw Error(ErrorCode::input, "trace has no windows");
    return trace;
}

std::vector<double> load_dirty_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::input, "cannot open trace " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_dirty_trace(ss.str());
}

SinglePlaneComparison single_plane_burst(const model::DisplayConfig& display,
                                         const model::SystemConfig& system,
                                         const cstates::CalibrationSet& calibration,
                                         const std::vector<double>& dirty_trace) {
    if (dirty_trace.empty()) throw Error(ErrorCode::input, "missing dirty-fraction trace");
    if (!display.drfb_present)
        throw Error(ErrorCode::unsupported_scheme, "frame bursting needs a DRFB panel");

    model::WorkloadSpec probe;
    probe.display = display;
    probe.video_fps = display.refresh_hz;
    probe.scheme = Scheme::bursting_only;
    model::require_valid(probe, system);

    const Bytes frame = model::frame_bytes(display.resolution, display.bits_per_pixel);
    const double panel_rate = static_cast<double>(frame) * display.refresh_hz;
    const double link = std::min(display.edp_max_bandwidth / 8.0, system.dram_fetch_bandwidth);

    std::vector<timeline::WindowPlan> conv, burst;
    for (std::size_t i = 0; i < dirty_trace.size(); ++i) {
        timeline::WindowPlan p;
        p.index = i;
        p.start = model::window_start(i, display.refresh_hz);
        p.length = model::window_length(i, display.refresh_hz);
        p.chunk = system.dc_buffer_bytes;
        p.transfer = true;
        p.source = timeline::ChunkSource::dram;
        p.source_rate = system.dram_fetch_bandwidth;

        auto c = p;
        c.scheme = Scheme::baseline;
        c.displayed = timeline::DisplayedFrame::refreshed;
        c.payload = frame;
        c.fetch_read = frame;
        c.panel_paced = true;
        c.link_rate = panel_rate;
        c.transfer_length = p.length;
        conv.push_back(c);

        auto b = p;
        b.scheme = Scheme::bursting_only;
        b.displayed = timeline::DisplayedFrame::new_frame;
        b.payload = display.panel_psr2_capable ? selective_update_bytes(display, dirty_trace[i]) : frame;
        b.fetch_read = b.payload;
        b.link_rate = link;
        b.transfer_length = from_seconds(static_cast<double>(b.payload) / link);
        if (b.transfer_length.count() <= 0) b.transfer_length = Duration{1};
        b.drfb = true;
        burst.push_back(b);
    }

    SinglePlaneComparison out;
    out.conventional_timelines = timeline::build_from_plans(conv);
    out.bursting_timelines = timeline::build_from_plans(burst);
    out.conventional = power::energy_breakdown(out.conventional_timelines,
                                               calibration.profile_for(Scheme::baseline), system);
    out.bursting = power::energy_breakdown(out.bursting_timelines,
                                           calibration.profile_for(Scheme::bursting_only), system);
    out.conventional.calibration = out.bursting.calibration = calibration.name;
    out.reduction_percent =
        100.0 * (1.0 - out.bursting.total.total_j / out.conventional.total.total_j);
    power::Reduction red;
    red.reference_scheme = "conventional";
    red.reference_energy_j = out.conventional.per_second.total_j;
    red.percent = out.reduction_percent;
    out.bursting.reduction = red;
    return out;
}

} // namespace burstlink::scenarios
