#include "burstlink/plan.hpp"

#include "burstlink/error.hpp"
#include "burstlink/scenarios.hpp"

#include "int_math.hpp"

#include <algorithm>
#include <cmath>

namespace burstlink::timeline {

using model::Scheme;

namespace {

Bytes scaled(double factor, Bytes bytes) {
    return static_cast<Bytes>(std::llround(factor * static_cast<double>(bytes)));
}

Duration time_for(Bytes bytes, double rate) {
    return from_seconds(static_cast<double>(bytes) / rate);
}

} // namespace

std::uint64_t WindowPlan::chunk_count() const {
    if (!transfer || chunk == 0) return 0;
    return (payload + chunk - 1) / chunk;
}

Bytes WindowPlan::chunk_bytes(std::uint64_t k) const {
    const Bytes begin = k * chunk;
    return begin >= payload ? 0 : std::min(chunk, payload - begin);
}

Bytes cumulative_share(Bytes total, Duration a, Duration b, Duration t) {
    if (t <= a) return 0;
    if (t >= b) return total;
    return detail::mul_div_floor(total, static_cast<std::uint64_t>((t - a).count()),
                                 static_cast<std::uint64_t>((b - a).count()));
}

std::vector<WindowPlan> plan_windows(const model::WorkloadSpec& w, const model::SystemConfig& sys) {
    model::require_valid(w, sys);

    const auto& d = w.display;
    const auto& o = w.overlay;
    const Bytes frame = model::frame_bytes(d.resolution, d.bits_per_pixel);
    const std::uint32_t ratio = model::repeat_ratio(w);
    const Scheme effective = scenarios::select_scheme(o.planes, w.scheme, d);
    const double panel_rate = static_cast<double>(frame) * d.refresh_hz;
    const double link_max = d.edp_max_bandwidth / 8.0;
    const bool vr = w.kind == model::VideoKind::vr360;
    const Bytes encoded = scaled(sys.encoded_ratio, frame);

    std::vector<WindowPlan> plans;
    plans.reserve(w.windows_to_simulate);
    for (std::uint64_t i = 0; i < w.windows_to_simulate; ++i) {
        WindowPlan p;
        p.index = i;
        p.start = model::window_start(i, d.refresh_hz);
        p.length = model::window_length(i, d.refresh_hz);
        p.deepest_allowed = o.deepest_allowed;
        p.chunk = sys.dc_buffer_bytes;

        const bool decode_window = i % ratio == 0;
        Scheme scheme = effective;
        Bytes payload = frame;
        if (o.windowed && effective != Scheme::baseline) {
            if (i < o.windowed->stage1_windows)
                scheme = Scheme::baseline;
            else
                payload = scenarios::selective_update_bytes(d, o.windowed->dirty_fraction,
                                                            o.windowed->header_bytes);
        }
        p.scheme = scheme;

        const auto paced_length = [&](Bytes bytes) {
            return bytes == frame ? p.length : time_for(bytes, panel_rate);
        };

        if (!model::bypasses_dram(scheme)) {
            const bool batching = o.batch_frames > 1;
            const double scale =
                o.fbc_ratio * (batching ? 1.0 - o.batch_cached_fraction : 1.0);
            const std::uint64_t ordinal = i / ratio;
            const bool has_decode = decode_window && (!batching || ordinal % o.batch_frames == 0);
            const Bytes frames = batching ? o.batch_frames : 1;

            if (decode_window)
                p.displayed = DisplayedFrame::new_frame;
            else if (scheme == Scheme::baseline && !w.psr_alternate_windows)
                p.displayed = DisplayedFrame::refreshed;
            else
                p.displayed = DisplayedFrame::repeated;

            if (p.displayed != DisplayedFrame::repeated) p.orchestration = sys.orchestration_time;
            if (has_decode) {
                p.decode_bytes = frames * frame;
                p.decode_rate = sys.decode_rate * (batching ? o.batch_decode_boost : 1.0);
                p.encoded_read = frames * encoded;
                p.decode_write = scaled(scale, frames * frame);
                p.compressing = o.fbc_ratio < 1.0;
                if (vr) {
                    p.pt_bytes = frames * frame;
                    p.pt_rate = sys.gpu_pt_rate;
                    p.pt_read = p.decode_write;
                    p.pt_write = p.decode_write;
                }
            }
            if (p.displayed != DisplayedFrame::repeated) {
                p.transfer = true;
                p.payload = payload;
                p.source = ChunkSource::dram;
                p.source_rate = sys.dram_fetch_bandwidth / scale;
                p.fetch_read = scaled(scale, payload);
                if (scheme == Scheme::baseline) {
                    p.panel_paced = true;
                    p.link_rate = panel_rate;
                    p.transfer_length = paced_length(payload);
                } else {
                    p.link_rate = std::min(link_max, p.source_rate);
                    p.transfer_length = time_for(payload, p.link_rate);
                    p.drfb = true;
                }
            }
        } else {
            p.displayed = decode_window ? DisplayedFrame::new_frame : DisplayedFrame::repeated;
            if (decode_window)
                p.orchestration = sys.bypass_orchestration_time;
            else
                p.orchestration = sys.repeat_orchestration_time;
            if (decode_window) {
                p.encoded_read = scaled(sys.encoded_ratio, payload);
                p.transfer = true;
                p.payload = payload;
                p.source = ChunkSource::decoder;
                p.source_rate =
                    vr ? std::min(sys.stream_decode_rate, sys.gpu_pt_rate) : sys.stream_decode_rate;
                p.pipelined_projection = vr;
                p.drfb = true;
                if (scheme == Scheme::bypass_only) {
                    p.panel_paced = true;
                    p.link_rate = panel_rate;
                    p.transfer_length = paced_length(payload);
                } else {
                    p.link_rate = std::min(link_max, p.source_rate);
                    p.transfer_start = p.orchestration;
                    p.transfer_length = time_for(payload, p.link_rate);
                }
            }
        }

        if (p.transfer) {
            if (p.transfer_length.count() <= 0) p.transfer_length = Duration{1};
            if (p.transfer_end() > p.length) {
                if (p.transfer_end() - p.length > Duration{2})
                    throw Error(ErrorCode::infeasible_config,
                                "transfer does not fit in window " + std::to_string(i));
                p.transfer_length = p.length - p.transfer_start;
            }
        }
        plans.push_back(p);
    }
    return plans;
}

} // namespace burstlink::timeline
