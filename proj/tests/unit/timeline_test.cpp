#include "burstlink/error.hpp"
#include "burstlink/plan.hpp"
#include "burstlink/presets.hpp"
#include "burstlink/timeline.hpp"
#include "reference.hpp"

#include <gtest/gtest.h>

namespace bl = burstlink;
namespace m = burstlink::model;
namespace tl = burstlink::timeline;
using enum bl::PackageCState;

namespace {

m::WorkloadSpec spec(m::Resolution r, std::uint32_t fps, m::Scheme s, std::uint32_t windows = 4) {
    m::WorkloadSpec w;
    w.display.resolution = r;
    w.video_fps = fps;
    w.scheme = s;
    w.windows_to_simulate = windows;
    return w;
}

const m::SystemConfig& sys() { return bl::cstates::default_calibration().system; }

double residency_pp(const std::vector<tl::WindowTimeline>& t, bl::PackageCState s) {
    return 100.0 * tl::residencies(t)[s];
}

bl::Bytes edp(const tl::WindowTimeline& t) {
    bl::Bytes b = 0;
    for (const auto& iv : t.intervals) b += iv.edp_bytes;
    return b;
}

} // namespace

TEST(Baseline, Table2Residencies) {
    const auto p = bl::presets::preset("table2-baseline");
    const auto t = tl::build_timelines(p.workload, p.calibration.system);
    EXPECT_NEAR(residency_pp(t, C0), 9, 2);
    EXPECT_NEAR(residency_pp(t, C2), 11, 2);
    EXPECT_NEAR(residency_pp(t, C8), 80, 2);
}

TEST(Burstlink, Table2Residencies) {
    const auto p = bl::presets::preset("table2-burstlink");
    const auto t = tl::build_timelines(p.workload, p.calibration.system);
    EXPECT_NEAR(residency_pp(t, C0), 2, 2);
    EXPECT_NEAR(residency_pp(t, C7) + residency_pp(t, C7P), 19, 2);
    EXPECT_NEAR(residency_pp(t, C9), 79, 2);
}

TEST(Baseline, PsrAlternateRepeatWindowIsAllC9) {
    auto w = spec(m::kFHD, 30, m::Scheme::baseline);
    const auto t = tl::build_baseline(w, sys(), true);
    ASSERT_EQ(t.size(), 4u);
    for (std::size_t i = 1; i < t.size(); i += 2) {
        ASSERT_EQ(t[i].intervals.size(), 1u);
        EXPECT_EQ(t[i].intervals[0].state, C9);
        EXPECT_EQ(t[i].displayed_frame, tl::DisplayedFrame::repeated);
        EXPECT_EQ(edp(t[i]), 0u);
    }
}

TEST(Baseline, RepeatWindowsResendWithoutPsr) {
    const auto t = tl::build_baseline(spec(m::kFHD, 30, m::Scheme::baseline), sys(), false);
    EXPECT_EQ(t[1].displayed_frame, tl::DisplayedFrame::refreshed);
    EXPECT_EQ(edp(t[1]), ref::frame_bytes(1920, 1080, 24));
}

TEST(Baseline, TwelveChunkFetchesPerFhdTransfer) {
    const auto w = spec(m::kFHD, 30, m::Scheme::baseline);
    const auto plans = tl::plan_windows(w, sys());
    const std::uint64_t expected = (ref::frame_bytes(1920, 1080, 24) + 524'287) / 524'288;
    ASSERT_EQ(expected, 12u);
    EXPECT_EQ(plans[0].chunk_count(), expected);
    // Fetches issued while the package is already in C0 do not show up as C2 spans.
    const auto t = tl::build_window(plans[1]);
    std::uint64_t fetches = 0;
    for (const auto& iv : t.intervals) {
        if (iv.state == C2) ++fetches;
        if (iv.state == C0) fetches += (iv.frame_read + 524'287) / 524'288;
    }
    EXPECT_EQ(fetches, expected);
}

TEST(Baseline, EdpDrainsAtPanelRate) {
    const auto t = tl::build_timelines(spec(m::k4K, 60, m::Scheme::baseline, 2), sys());
    const double rate = static_cast<double>(ref::frame_bytes(3840, 2160, 24)) * 60;
    for (const auto& w : t)
        for (const auto& iv : w.intervals)
            EXPECT_NEAR(static_cast<double>(iv.edp_bytes), rate * bl::to_seconds(iv.span()), 2.0);
}

TEST(Bypass, NoDecodedFrameTrafficAndC9Repeats) {
    const auto w = spec(m::kFHD, 30, m::Scheme::bypass_only, 6);
    const auto t = tl::build_bypass(w, sys());
    for (const auto& win : t) {
        for (const auto& iv : win.intervals) {
            EXPECT_EQ(iv.frame_read, 0u);
            EXPECT_EQ(iv.frame_write, 0u);
        }
        if (win.window_index % 2 == 1) {
            EXPECT_EQ(win.displayed_frame, tl::DisplayedFrame::repeated);
            EXPECT_EQ(win.intervals.back().state, C9);
        }
    }
}

TEST(Bypass, CycleSpansFollowRateAlgebra) {
    const auto w = spec(m::kFHD, 60, m::Scheme::bypass_only, 1);
    const auto t = tl::build_bypass(w, sys());
    const double chunk = 524'288;
    const double c7 = chunk / sys().stream_decode_rate;
    const double panel = static_cast<double>(ref::frame_bytes(1920, 1080, 24)) * 60;
    const double c7p = chunk / panel - c7;
    ASSERT_GT(c7p, 0);
    // Interior cycles: skip the first and last pairs that border orchestration and window end.
    int checked = 0;
    const auto& iv = t[0].intervals;
    for (std::size_t i = 2; i + 2 < iv.size(); ++i) {
        if (iv[i].state == C7 && iv[i + 1].state == C7P) {
            EXPECT_NEAR(bl::to_seconds(iv[i].span()), c7, 2e-9);
            EXPECT_NEAR(bl::to_seconds(iv[i + 1].span()), c7p, 2e-9);
            ++checked;
        }
    }
    EXPECT_GT(checked, 5);
}

TEST(Bypass, RequiresDrfb) {
    auto w = spec(m::kFHD, 30, m::Scheme::bypass_only);
    w.display.drfb_present = false;
    try {
        (void)tl::build_bypass(w, sys());
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::unsupported_scheme);
    }
}

TEST(Bursting, FourKSixtyLeavesOverHalfTheWindowInC9) {
    const auto t = tl::build_bursting(spec(m::k4K, 60, m::Scheme::bursting_only), sys());
    const double share = ref::link_seconds(ref::frame_bytes(3840, 2160, 24), 25.92e9) * 60;
    EXPECT_NEAR(share, 0.4608, 1e-4);
    EXPECT_NEAR(residency_pp(t, C9), 100.0 * (1 - share), 5.0);
}

TEST(Bursting, FhdTransferIsShort) {
    auto w = spec(m::kFHD, 60, m::Scheme::bursting_only);
    const auto t = tl::build_bursting(w, sys());
    for (const auto& win : t) {
        bl::Duration last_edp{0};
        for (const auto& iv : win.intervals)
            if (iv.edp_bytes) last_edp = iv.end;
        EXPECT_LE(bl::to_seconds(last_edp), 1.92e-3 + bl::to_seconds(sys().orchestration_time) +
                                               6'220'800.0 / sys().decode_rate);
    }
}

TEST(Bursting, PanelRateLinkDegeneratesToStreaming) {
    auto w = spec(m::kFHD, 60, m::Scheme::bursting_only);
    w.display.edp_max_bandwidth = m::panel_stream_rate(w.display);
    const auto t = tl::build_bursting(w, sys());
    EXPECT_NEAR(residency_pp(t, C9), 0.0, 1e-6);
}

TEST(Bursting, InfeasibleBurstThrows) {
    auto w = spec(m::k5K, 120, m::Scheme::bursting_only);
    w.display.refresh_hz = 120;
    try {
        (void)tl::build_bursting(w, sys());
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::infeasible_config);
    }
}

TEST(Burstlink, NoDecodedFrameTraffic) {
    for (auto r : {m::kFHD, m::k4K}) {
        const auto t = tl::build_burstlink(spec(r, 30, m::Scheme::burstlink), sys());
        for (const auto& win : t)
            for (const auto& iv : win.intervals) {
                EXPECT_EQ(iv.frame_read, 0u);
                EXPECT_EQ(iv.frame_write, 0u);
            }
    }
}

TEST(Burstlink, BurstSpanFollowsSlowerOfLinkAndDecoder) {
    for (auto r : {m::kFHD, m::kQHD, m::k4K, m::k5K}) {
        const auto t = tl::build_burstlink(spec(r, 60, m::Scheme::burstlink, 1), sys());
        bl::Duration last_edp{0};
        for (const auto& iv : t[0].intervals)
            if (iv.edp_bytes) last_edp = iv.end;
        const double bytes = static_cast<double>(ref::frame_bytes(r.width, r.height, 24));
        const double expected =
            bytes * 8 / std::min(25.92e9, sys().stream_decode_rate * 8) + bl::to_seconds(sys().bypass_orchestration_time);
        EXPECT_NEAR(bl::to_seconds(last_edp), expected, 2e-6) << m::resolution_name(r);
    }
}

TEST(Burstlink, RepeatWindowIsShortC0ThenC9) {
    const auto t = tl::build_burstlink(spec(m::kFHD, 30, m::Scheme::burstlink), sys());
    const auto& w = t[1];
    ASSERT_EQ(w.intervals.size(), 2u);
    EXPECT_EQ(w.intervals[0].state, C0);
    EXPECT_EQ(w.intervals[0].span(), sys().repeat_orchestration_time);
    EXPECT_EQ(w.intervals[1].state, C9);
    EXPECT_EQ(edp(w), 0u);
}

TEST(Burstlink, VrProjectionIsPipelined) {
    auto w = spec(m::kQHD, 30, m::Scheme::burstlink);
    w.kind = m::VideoKind::vr360;
    const auto t = tl::build_burstlink(w, sys());
    bool projecting = false;
    for (const auto& win : t)
        for (const auto& iv : win.intervals) {
            EXPECT_EQ(iv.frame_read + iv.frame_write, 0u);
            projecting |= iv.projecting;
        }
    EXPECT_TRUE(projecting);
}

TEST(Baseline, VrAddsProjectionRoundTrips) {
    auto w = spec(m::kQHD, 30, m::Scheme::baseline, 2);
    const auto planar = tl::build_timelines(w, sys());
    w.kind = m::VideoKind::vr360;
    const auto vr = tl::build_timelines(w, sys());
    auto traffic = [](const std::vector<tl::WindowTimeline>& t) {
        bl::Bytes r = 0, wr = 0;
        for (const auto& x : t)
            for (const auto& iv : x.intervals) {
                r += iv.frame_read;
                wr += iv.frame_write;
            }
        return std::pair{r, wr};
    };
    const bl::Bytes frame = ref::frame_bytes(2560, 1440, 24);
    EXPECT_EQ(traffic(vr).second - traffic(planar).second, frame);
    EXPECT_EQ(traffic(vr).first - traffic(planar).first, frame);
    EXPECT_GT(residency_pp(vr, C0), residency_pp(planar, C0));
}

TEST(Residencies, SingleC9Window) {
    tl::WindowTimeline t;
    t.duration = bl::Duration{1000};
    t.intervals.push_back({tl::IntervalKind::steady, C9, C9, bl::Duration{0}, bl::Duration{1000}});
    const std::vector<tl::WindowTimeline> v{t};
    const auto r = tl::residencies(v);
    EXPECT_EQ(r[C9], 1.0);
    EXPECT_EQ(r.sum(), 1.0);
}

TEST(Coverage, DetectsGaps) {
    tl::WindowTimeline t;
    t.duration = bl::Duration{1000};
    t.intervals.push_back({tl::IntervalKind::steady, C9, C9, bl::Duration{0}, bl::Duration{400}});
    t.intervals.push_back({tl::IntervalKind::steady, C8, C8, bl::Duration{500}, bl::Duration{1000}});
    EXPECT_THROW(tl::check_coverage(t), bl::Error);
    t.intervals[1].start = bl::Duration{400};
    EXPECT_NO_THROW(tl::check_coverage(t));
}

TEST(Transitions, AnnotatedAcrossWindowBoundaries) {
    auto t = tl::build_timelines(spec(m::kFHD, 30, m::Scheme::burstlink, 4), sys());
    std::size_t events = 0;
    for (const auto& w : t) events += w.transitions.size();
    EXPECT_GT(events, 0u);
    // C9 at the end of window 0 -> C0 at the start of window 1 shows up in window 1.
    ASSERT_FALSE(t[1].transitions.empty());
    EXPECT_EQ(t[1].transitions.front().at.count(), 0);
    EXPECT_EQ(t[1].transitions.front().to, C0);
}

TEST(Oracle, RejectsCoarseTick) {
    EXPECT_THROW((void)tl::oracle_simulate(spec(m::kFHD, 30, m::Scheme::baseline), sys(), bl::Duration{2000}),
                 bl::Error);
}

TEST(Oracle, TickHalvingConverges) {
    const auto w = spec(m::kFHD, 30, m::Scheme::baseline, 2);
    const auto a = tl::residencies(tl::oracle_simulate(w, sys(), bl::Duration{1000}));
    const auto b = tl::residencies(tl::oracle_simulate(w, sys(), bl::Duration{500}));
    for (auto s : bl::kAllStates) EXPECT_LT(100.0 * std::abs(a[s] - b[s]), 0.01) << bl::to_string(s);
}

TEST(CumulativeShare, ExactEndpointsAndMonotone) {
    EXPECT_EQ(tl::cumulative_share(1000, bl::Duration{0}, bl::Duration{10}, bl::Duration{0}), 0u);
    EXPECT_EQ(tl::cumulative_share(1000, bl::Duration{0}, bl::Duration{10}, bl::Duration{10}), 1000u);
    EXPECT_EQ(tl::cumulative_share(1000, bl::Duration{0}, bl::Duration{10}, bl::Duration{5}), 500u);
    bl::Bytes prev = 0;
    for (int t = 0; t <= 97; ++t) {
        const auto v = tl::cumulative_share(24'883'200, bl::Duration{3}, bl::Duration{97}, bl::Duration{t});
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_EQ(prev, 24'883'200u);
}
