#include "burstlink/timeline.hpp"

#include "burstlink/cstates.hpp"
#include "burstlink/error.hpp"
#include "burstlink/plan.hpp"

#include "int_math.hpp"

#include <algorithm>
#include <cmath>

namespace burstlink::timeline {

using cstates::Activity;
using cstates::PanelState;
using cstates::VdState;
using model::Scheme;

std::string_view to_string(DisplayedFrame f) noexcept {
    switch (f) {
    case DisplayedFrame::new_frame: return "new";
    case DisplayedFrame::refreshed: return "refreshed";
    case DisplayedFrame::repeated: return "repeated";
    }
    return "new";
}

namespace {

Duration time_for(Bytes bytes, double rate) {
    return from_seconds(static_cast<double>(bytes) / rate);
}

/// Chunk k becomes due when the drain has consumed k chunks.
Duration chunk_due(const WindowPlan& p, std::uint64_t k) {
    return p.transfer_start +
           Duration{static_cast<std::int64_t>(detail::mul_div_ceil(
               k * p.chunk, static_cast<std::uint64_t>(p.transfer_length.count()), p.payload))};
}

struct Segment {
    Duration a, b;
    PackageCState state;
    bool drfb, compressing, projecting;
    Bytes encoded_read = 0, frame_read = 0, frame_write = 0, edp = 0;
};

struct Fill {
    Duration s, e;
    Bytes dram_bytes;
};

} // namespace

WindowTimeline build_window(const WindowPlan& p) {
    const bool conventional = !model::bypasses_dram(p.scheme);
    const Duration L = p.length;
    const Duration orch = p.orchestration;
    const Duration dec_end = orch + (p.decode_bytes ? time_for(p.decode_bytes, p.decode_rate) : Duration{0});
    const Duration pt_end = dec_end + (p.pt_bytes ? time_for(p.pt_bytes, p.pt_rate) : Duration{0});
    const Duration cores_end = conventional ? pt_end : orch;
    if (cores_end > L)
        throw Error(ErrorCode::infeasible_config,
                    "C0 work does not fit in window " + std::to_string(p.index));
    const Duration ts = p.transfer_start;
    const Duration te = p.transfer ? p.transfer_end() : ts;

    std::vector<Fill> fills;
    if (p.transfer) {
        const auto n = p.chunk_count();
        fills.reserve(n);
        Bytes fetched = 0;
        for (std::uint64_t k = 0; k < n; ++k) {
            const Duration s = chunk_due(p, k);
            const Duration next = k + 1 < n ? chunk_due(p, k + 1) : te;
            Duration e = s + time_for(p.chunk_bytes(k), p.source_rate);
            e = std::clamp(e, s + Duration{1}, std::max(next, s + Duration{1}));
            e = std::min(e, L);
            Bytes upto = 0;
            if (p.source == ChunkSource::dram) {
                const Bytes consumed = std::min(p.payload, (k + 1) * p.chunk);
                upto = detail::mul_div_floor(p.fetch_read, consumed, p.payload);
            }
            fills.push_back({s, e, upto - fetched});
            fetched = upto;
        }
    }

    std::vector<Duration> cuts{Duration{0}, L, orch, dec_end, pt_end, ts, te};
    for (const auto& f : fills) {
        cuts.push_back(f.s);
        cuts.push_back(f.e);
    }
    for (auto& c : cuts) c = std::clamp(c, Duration{0}, L);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Segment> segs;
    segs.reserve(cuts.size());
    std::size_t fi = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Duration a = cuts[i];
        const Duration b = cuts[i + 1];
        while (fi < fills.size() && fills[fi].e <= a) ++fi;
        const bool fill = fi < fills.size() && fills[fi].s <= a && a < fills[fi].e;
        const bool in_transfer = p.transfer && ts <= a && a < te;
        const bool decoding = conventional && p.decode_bytes && orch <= a && a < dec_end;
        const bool projecting = conventional && p.pt_bytes && dec_end <= a && a < pt_end;
        const bool encoded_flow = p.encoded_read && (conventional ? decoding : a < orch);

        Activity act;
        act.cores = a < cores_end;
        act.gpu = projecting;
        if (conventional)
            act.vd = decoding ? VdState::active : VdState::off;
        else
            act.vd = fill ? VdState::active : (in_transfer ? VdState::clock_gated : VdState::off);
        act.dc = act.edp_source = act.edp_sink = in_transfer;
        act.panel = in_transfer ? PanelState::streaming : PanelState::psr;
        act.dram_traffic = encoded_flow || (decoding && p.decode_write) || projecting ||
                           (fill && p.source == ChunkSource::dram);
        act.dram = (act.cores || act.gpu || act.dram_traffic) ? DramState::active
                                                              : DramState::self_refresh;

        Segment s{a, b, cstates::deepest_state(act, p.deepest_allowed),
                  p.drfb && in_transfer, p.compressing && decoding,
                  p.pipelined_projection && fill};
        segs.push_back(s);
    }

    const auto spread = [&segs](Bytes total, Duration a, Duration b, Bytes Segment::*field) {
        if (total == 0 || b <= a) return;
        auto it = std::lower_bound(segs.begin(), segs.end(), a,
                                   [](const Segment& s, Duration t) { return s.a < t; });
        for (; it != segs.end() && it->b <= b; ++it)
            (*it).*field += cumulative_share(total, a, b, it->b) - cumulative_share(total, a, b, it->a);
    };
    if (p.encoded_read) {
        if (conventional)
            spread(p.encoded_read, orch, dec_end, &Segment::encoded_read);
        else
            spread(p.encoded_read, Duration{0}, orch, &Segment::encoded_read);
    }
    spread(p.decode_write, orch, dec_end, &Segment::frame_write);
    spread(p.pt_read, dec_end, pt_end, &Segment::frame_read);
    spread(p.pt_write, dec_end, pt_end, &Segment::frame_write);
    for (const auto& f : fills) spread(f.dram_bytes, f.s, f.e, &Segment::frame_read);
    if (p.transfer) spread(p.payload, ts, te, &Segment::edp);

    WindowTimeline t;
    t.window_index = p.index;
    t.start = p.start;
    t.duration = L;
    t.displayed_frame = p.displayed;
    t.scheme = p.scheme;
    for (const auto& s : segs) {
        if (!t.intervals.empty()) {
            auto& last = t.intervals.back();
            if (last.state == s.state && last.drfb_active == s.drfb &&
                last.compressing == s.compressing && last.projecting == s.projecting) {
                last.end = s.b;
                last.encoded_read += s.encoded_read;
                last.frame_read += s.frame_read;
                last.frame_write += s.frame_write;
                last.edp_bytes += s.edp;
                continue;
            }
        }
        Interval iv;
        iv.state = s.state;
        iv.start = s.a;
        iv.end = s.b;
        iv.encoded_read = s.encoded_read;
        iv.frame_read = s.frame_read;
        iv.frame_write = s.frame_write;
        iv.edp_bytes = s.edp;
        iv.drfb_active = s.drfb;
        iv.compressing = s.compressing;
        iv.projecting = s.projecting;
        t.intervals.push_back(iv);
    }
    return t;
}

std::vector<WindowTimeline> build_from_plans(const std::vector<WindowPlan>& plans) {
    std::vector<WindowTimeline> out;
    out.reserve(plans.size());
    for (const auto& p : plans) out.push_back(build_window(p));
    annotate_transitions(out);
    return out;
}

namespace {

void require_scheme(const model::WorkloadSpec& w, Scheme expected) {
    if (w.scheme != expected)
        throw Error(ErrorCode::invalid_config,
                    "builder for " + std::string(model::to_string(expected)) + " called with scheme " +
                        std::string(model::to_string(w.scheme)));
}

} // namespace

std::vector<WindowTimeline> build_timelines(const model::WorkloadSpec& workload,
                                            const model::SystemConfig& system) {
    return build_from_plans(plan_windows(workload, system));
}

std::vector<WindowTimeline> build_baseline(const model::WorkloadSpec& workload,
                                           const model::SystemConfig& system,
                                           bool psr_alternate_windows) {
    require_scheme(workload, Scheme::baseline);
    auto w = workload;
    w.psr_alternate_windows = psr_alternate_windows;
    return build_timelines(w, system);
}

std::vector<WindowTimeline> build_bypass(const model::WorkloadSpec& workload,
                                         const model::SystemConfig& system) {
    require_scheme(workload, Scheme::bypass_only);
    return build_timelines(workload, system);
}

std::vector<WindowTimeline> build_bursting(const model::WorkloadSpec& workload,
                                           const model::SystemConfig& system) {
    require_scheme(workload, Scheme::bursting_only);
    return build_timelines(workload, system);
}

std::vector<WindowTimeline> build_burstlink(const model::WorkloadSpec& workload,
                                            const model::SystemConfig& system) {
    require_scheme(workload, Scheme::burstlink);
    return build_timelines(workload, system);
}

double Residencies::sum() const noexcept {
    double s = transition_fraction;
    for (double f : fraction) s += f;
    return s;
}

Residencies residencies(std::span<const WindowTimeline> timelines) {
    std::array<std::int64_t, kStateCount> ns{};
    std::int64_t transition_ns = 0;
    std::int64_t total = 0;
    for (const auto& t : timelines) {
        for (const auto& iv : t.intervals) {
            if (iv.kind == IntervalKind::transition)
                transition_ns += iv.span().count();
            else
                ns[index(iv.state)] += iv.span().count();
        }
        total += t.duration.count();
    }
    Residencies r;
    r.total = Duration{total};
    if (total == 0) return r;
    const auto T = static_cast<double>(total);
    for (std::size_t i = 0; i < kStateCount; ++i) r.fraction[i] = static_cast<double>(ns[i]) / T;
    r.transition_fraction = static_cast<double>(transition_ns) / T;
    return r;
}

void annotate_transitions(std::vector<WindowTimeline>& timelines) {
    std::optional<PackageCState> prev;
    for (auto& t : timelines) {
        t.transitions.clear();
        for (const auto& iv : t.intervals) {
            if (iv.kind == IntervalKind::transition) {
                t.transitions.push_back({iv.start, iv.from, iv.state});
                prev = iv.state;
                continue;
            }
            if (prev && *prev != iv.state) t.transitions.push_back({iv.start, *prev, iv.state});
            prev = iv.state;
        }
    }
}

void check_coverage(const WindowTimeline& t) {
    Duration at{0};
    for (const auto& iv : t.intervals) {
        if (iv.start != at)
            throw Error(ErrorCode::consistency, "gap or overlap in window " +
                                                    std::to_string(t.window_index));
        if (iv.end <= iv.start)
            throw Error(ErrorCode::consistency, "empty interval in window " +
                                                    std::to_string(t.window_index));
        at = iv.end;
    }
    if (at != t.duration)
        throw Error(ErrorCode::consistency,
                    "intervals do not cover window " + std::to_string(t.window_index));
}

} // namespace burstlink::timeline
