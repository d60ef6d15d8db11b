#include "burstlink/cstates.hpp"
#include "burstlink/error.hpp"
#include "burstlink/plan.hpp"
#include "burstlink/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace burstlink::timeline {

using cstates::Activity;
using cstates::PanelState;
using cstates::VdState;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kByteEps = 1e-6;

/// Component state machines for one window. Time is in nanoseconds relative
/// to the window start; quantities are continuous and advanced event by event.
class WindowSim {
public:
    explicit WindowSim(const WindowPlan& p)
        : p_(p), conventional_(!model::bypasses_dram(p.scheme)),
          orch_end_(static_cast<double>(p.orchestration.count())),
          ts_(static_cast<double>(p.transfer_start.count())),
          link_(p.link_rate * 1e-9), source_(p.source_rate * 1e-9),
          vd_rate_(p.decode_rate * 1e-9), pt_rate_(p.pt_rate * 1e-9),
          vd_left_(static_cast<double>(p.decode_bytes)), pt_left_(static_cast<double>(p.pt_bytes)),
          payload_(static_cast<double>(p.payload)) {
        if (p.transfer && p.panel_paced) link_ = payload_ / static_cast<double>(p.transfer_length.count());
        settle();
    }

    void advance_to(double target) {
        while (now_ < target) {
            const double step_end = std::min(target, next_event());
            integrate(step_end - now_);
            now_ = step_end;
            settle();
        }
    }

    [[nodiscard]] Activity activity() const {
        Activity a;
        const bool orchestrating = now_ < orch_end_;
        a.cores = orchestrating || (conventional_ && (vd_busy() || pt_busy()));
        a.gpu = conventional_ && pt_busy();
        const bool streaming = transfer_active();
        if (conventional_)
            a.vd = vd_busy() ? VdState::active : VdState::off;
        else
            a.vd = filling_ ? VdState::active : (streaming ? VdState::clock_gated : VdState::off);
        a.dc = a.edp_source = a.edp_sink = streaming;
        a.panel = streaming ? PanelState::streaming : PanelState::psr;
        const bool encoded = p_.encoded_read && (conventional_ ? vd_busy() : orchestrating);
        a.dram_traffic = encoded || (vd_busy() && p_.decode_write) || pt_busy() ||
                         (filling_ && p_.source == ChunkSource::dram);
        a.dram = (a.cores || a.gpu || a.dram_traffic) ? DramState::active : DramState::self_refresh;
        return a;
    }

    [[nodiscard]] bool drfb() const { return p_.drfb && transfer_active(); }
    [[nodiscard]] bool compressing() const { return p_.compressing && conventional_ && vd_busy(); }
    [[nodiscard]] bool projecting() const { return p_.pipelined_projection && filling_; }

    // Cumulative traffic so far, in bytes.
    [[nodiscard]] double encoded_cum() const {
        if (!p_.encoded_read) return 0;
        if (conventional_)
            return static_cast<double>(p_.encoded_read) * decode_progress();
        return static_cast<double>(p_.encoded_read) * std::min(1.0, now_ / orch_end_);
    }
    [[nodiscard]] double write_cum() const {
        return static_cast<double>(p_.decode_write) * decode_progress() +
               static_cast<double>(p_.pt_write) * pt_progress();
    }
    [[nodiscard]] double read_cum() const {
        double r = static_cast<double>(p_.pt_read) * pt_progress();
        if (p_.source == ChunkSource::dram && payload_ > 0)
            r += static_cast<double>(p_.fetch_read) * (filled_ / payload_);
        return r;
    }
    [[nodiscard]] double edp_cum() const { return drained_; }

private:
    [[nodiscard]] bool vd_busy() const { return conventional_ && now_ >= orch_end_ && vd_left_ > kByteEps; }
    [[nodiscard]] bool pt_busy() const {
        return conventional_ && now_ >= orch_end_ && vd_left_ <= kByteEps && pt_left_ > kByteEps;
    }
    [[nodiscard]] bool transfer_started() const { return p_.transfer && now_ >= ts_; }
    [[nodiscard]] bool transfer_active() const {
        return transfer_started() && drained_ < payload_ - kByteEps;
    }
    [[nodiscard]] double decode_progress() const {
        return p_.decode_bytes ? 1.0 - vd_left_ / static_cast<double>(p_.decode_bytes) : 0.0;
    }
    [[nodiscard]] double pt_progress() const {
        return p_.pt_bytes ? 1.0 - pt_left_ / static_cast<double>(p_.pt_bytes) : 0.0;
    }

    [[nodiscard]] double next_event() const {
        double t = kInf;
        if (now_ < orch_end_) t = std::min(t, orch_end_);
        if (p_.transfer && now_ < ts_) t = std::min(t, ts_);
        if (vd_busy()) t = std::min(t, now_ + vd_left_ / vd_rate_);
        if (pt_busy()) t = std::min(t, now_ + pt_left_ / pt_rate_);
        if (filling_) t = std::min(t, now_ + fill_left_ / source_);
        if (transfer_active()) {
            t = std::min(t, now_ + (payload_ - drained_) / link_);
            // Occupancy reaches zero: the drain catches up with what was filled.
            if (!filling_ && filled_ < payload_ - kByteEps && drained_ < filled_)
                t = std::min(t, now_ + (filled_ - drained_) / link_);
        }
        return t;
    }

    void integrate(double dt) {
        if (dt <= 0) return;
        if (vd_busy()) vd_left_ = std::max(0.0, vd_left_ - vd_rate_ * dt);
        else if (pt_busy()) pt_left_ = std::max(0.0, pt_left_ - pt_rate_ * dt);
        if (transfer_active()) drained_ = std::min(payload_, drained_ + link_ * dt);
        if (filling_) {
            const double moved = std::min(fill_left_, source_ * dt);
            fill_left_ -= moved;
            filled_ += moved;
        }
    }

    /// Applies instantaneous reactions: snap finished work and start refills.
    void settle() {
        if (vd_left_ <= kByteEps) vd_left_ = 0;
        if (pt_left_ <= kByteEps) pt_left_ = 0;
        if (filling_ && fill_left_ <= kByteEps) {
            filled_ = std::round(filled_);
            fill_left_ = 0;
            filling_ = false;
        }
        if (drained_ >= payload_ - kByteEps) drained_ = payload_;
        if (transfer_started() && !filling_ && filled_ < payload_ - kByteEps &&
            filled_ - drained_ <= kByteEps) {
            filling_ = true;
            fill_left_ = std::min(static_cast<double>(p_.chunk), payload_ - filled_);
        }
    }

    const WindowPlan& p_;
    bool conventional_;
    double orch_end_;
    double ts_;
    double link_;
    double source_;
    double vd_rate_;
    double pt_rate_;
    double vd_left_;
    double pt_left_;
    double payload_;
    double now_ = 0;
    double drained_ = 0;
    double filled_ = 0;
    double fill_left_ = 0;
    bool filling_ = false;
};

Bytes whole(double v) { return static_cast<Bytes>(std::floor(v + 1e-6)); }

WindowTimeline simulate_window(const WindowPlan& p, Duration tick) {
    WindowSim sim(p);
    WindowTimeline t;
    t.window_index = p.index;
    t.start = p.start;
    t.duration = p.length;
    t.displayed_frame = p.displayed;
    t.scheme = p.scheme;

    Bytes enc_prev = 0, rd_prev = 0, wr_prev = 0, edp_prev = 0;
    for (Duration a{0}; a < p.length; a += tick) {
        const Duration b = std::min(a + tick, p.length);
        const double mid = 0.5 * static_cast<double>(a.count() + b.count());
        sim.advance_to(mid);
        const PackageCState state = cstates::deepest_state(sim.activity(), p.deepest_allowed);
        const bool drfb = sim.drfb();
        const bool compressing = sim.compressing();
        const bool projecting = sim.projecting();
        sim.advance_to(static_cast<double>(b.count()));

        const bool last = b == p.length;
        const Bytes enc = last ? p.encoded_read : whole(sim.encoded_cum());
        const Bytes rd = last ? p.pt_read + (p.source == ChunkSource::dram ? p.fetch_read : 0)
                              : whole(sim.read_cum());
        const Bytes wr = last ? p.decode_write + p.pt_write : whole(sim.write_cum());
        const Bytes edp = last ? p.payload : whole(sim.edp_cum());

        Interval* cur = t.intervals.empty() ? nullptr : &t.intervals.back();
        if (!cur || cur->state != state || cur->drfb_active != drfb ||
            cur->compressing != compressing || cur->projecting != projecting) {
            Interval iv;
            iv.state = state;
            iv.start = a;
            iv.drfb_active = drfb;
            iv.compressing = compressing;
            iv.projecting = projecting;
            t.intervals.push_back(iv);
            cur = &t.intervals.back();
        }
        cur->end = b;
        cur->encoded_read += enc - enc_prev;
        cur->frame_read += rd - rd_prev;
        cur->frame_write += wr - wr_prev;
        cur->edp_bytes += edp - edp_prev;
        enc_prev = enc;
        rd_prev = rd;
        wr_prev = wr;
        edp_prev = edp;
    }
    return t;
}

} // namespace

std::vector<WindowTimeline> oracle_simulate(const model::WorkloadSpec& workload,
                                            const model::SystemConfig& system, Duration tick) {
    if (tick.count() <= 0 || tick > Duration{1000})
        throw Error(ErrorCode::invalid_config, "oracle tick must be in (0, 1 us]");
    const auto plans = plan_windows(workload, system);
    std::vector<WindowTimeline> out;
    out.reserve(plans.size());
    for (const auto& p : plans) out.push_back(simulate_window(p, tick));
    annotate_transitions(out);
    return out;
}

} // namespace burstlink::timeline
