#include "burstlink/error.hpp"
#include "burstlink/plan.hpp"
#include "burstlink/power.hpp"
#include "burstlink/report_io.hpp"
#include "burstlink/scenarios.hpp"
#include "reference.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

namespace bl = burstlink;
namespace m = burstlink::model;
namespace tl = burstlink::timeline;
namespace pw = burstlink::power;
namespace sc = burstlink::scenarios;
using enum bl::PackageCState;

namespace {

const bl::cstates::CalibrationSet& cal() { return bl::cstates::default_calibration(); }

m::WorkloadSpec spec(m::Resolution r, std::uint32_t fps, m::Scheme s, std::uint32_t windows = 60) {
    m::WorkloadSpec w;
    w.display.resolution = r;
    w.video_fps = fps;
    w.scheme = s;
    w.windows_to_simulate = windows;
    return w;
}

std::string report_text(const m::WorkloadSpec& w) {
    return bl::report::to_json(pw::streaming_report(w, cal().system, cal())).dump();
}

double total(const m::WorkloadSpec& w) {
    return pw::streaming_report(w, cal().system, cal(), {std::nullopt}).total.total_j;
}

} // namespace

TEST(Fbc, IdentityIsBitExact) {
    const auto w = spec(m::k4K, 60, m::Scheme::baseline);
    const auto r = sc::apply_fbc(w, 1.0);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_EQ(report_text(r.workload), report_text(w));
}

TEST(Fbc, HalfRatioAt4KSavesAboutNinePercent) {
    const auto w = spec(m::k4K, 60, m::Scheme::baseline);
    const double saved = 100.0 * (1.0 - total(sc::apply_fbc(w, 0.5).workload) / total(w));
    EXPECT_NEAR(saved, 9, 3);
}

TEST(Fbc, ScalesDramTrafficButNotEdp) {
    const auto w = spec(m::kQHD, 30, m::Scheme::bursting_only, 4);
    const auto f = sc::apply_fbc(w, 0.5).workload;
    const auto a = pw::streaming_report(w, cal().system, cal());
    const auto b = pw::streaming_report(f, cal().system, cal());
    EXPECT_EQ(a.edp_bytes, b.edp_bytes);
    EXPECT_NEAR(static_cast<double>(b.traffic.total_write()), 0.5 * static_cast<double>(a.traffic.total_write()), 4);
}

TEST(Fbc, IgnoredUnderBypassSchemes) {
    for (auto s : {m::Scheme::burstlink, m::Scheme::bypass_only}) {
        const auto w = spec(m::k4K, 60, s, 4);
        const auto r = sc::apply_fbc(w, 0.5);
        ASSERT_EQ(r.warnings.size(), 1u);
        EXPECT_EQ(report_text(r.workload), report_text(w));
    }
    EXPECT_THROW((void)sc::apply_fbc(spec(m::k4K, 60, m::Scheme::baseline), 0.0), bl::Error);
}

TEST(Batching, IdentityIsBitExact) {
    const auto w = spec(m::k4K, 60, m::Scheme::baseline);
    EXPECT_EQ(report_text(sc::apply_batching(w, cal().system, 1).workload), report_text(w));
}

TEST(Batching, DefaultAt4KSavesAboutSixPercent) {
    const auto w = spec(m::k4K, 60, m::Scheme::baseline);
    const double saved = 100.0 * (1.0 - total(sc::apply_batching(w, cal().system, 4).workload) / total(w));
    EXPECT_NEAR(saved, 6, 3);
    const auto bl_ = spec(m::k4K, 60, m::Scheme::burstlink);
    const double burst = 100.0 * (1.0 - total(bl_) / total(w));
    EXPECT_GT(burst - saved, 30);
}

TEST(Batching, DecodeConcentratesInFirstWindowOfBatch) {
    const auto w = sc::apply_batching(spec(m::kFHD, 60, m::Scheme::baseline, 8), cal().system, 4).workload;
    const auto plans = tl::plan_windows(w, cal().system);
    for (const auto& p : plans) {
        if (p.index % 4 == 0)
            EXPECT_EQ(p.decode_bytes, 4 * ref::frame_bytes(1920, 1080, 24));
        else
            EXPECT_EQ(p.decode_bytes, 0u);
    }
}

TEST(Batching, CapacityExceededIsInfeasible) {
    auto s = cal().system;
    s.dram_capacity_bytes = 3 * ref::frame_bytes(3840, 2160, 24);
    try {
        (void)sc::apply_batching(spec(m::k4K, 60, m::Scheme::baseline), s, 4);
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::infeasible_config);
    }
}

TEST(Overlays, FbcAndBatchingCommute) {
    const auto w = spec(m::kQHD, 60, m::Scheme::baseline, 8);
    const auto a = sc::apply_batching(sc::apply_fbc(w, 0.6).workload, cal().system, 2).workload;
    const auto b = sc::apply_fbc(sc::apply_batching(w, cal().system, 2).workload, 0.6).workload;
    EXPECT_EQ(report_text(a), report_text(b));
}

TEST(SelectiveUpdate, Bytes) {
    m::DisplayConfig d;
    EXPECT_EQ(sc::selective_update_bytes(d, 1.0), ref::frame_bytes(1920, 1080, 24));
    EXPECT_EQ(sc::selective_update_bytes(d, 0.0), 128u);
    EXPECT_EQ(sc::selective_update_bytes(d, 0.25), 1'555'200u + 128u);
    d.panel_psr2_capable = false;
    try {
        (void)sc::selective_update_bytes(d, 0.5);
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::unsupported_scheme);
    }
}

TEST(SelectiveUpdate, ZeroDirtyWindowIsAlmostAllC9) {
    auto w = spec(m::kFHD, 60, m::Scheme::burstlink, 4);
    w.overlay.windowed = m::WindowedVideo{0.0, 0, 128};
    const auto t = tl::build_timelines(w, cal().system);
    EXPECT_GT(tl::residencies(t)[C9], 0.95);
}

TEST(SelectiveUpdate, StageOneRunsConventionalPath) {
    auto w = spec(m::kFHD, 60, m::Scheme::burstlink, 4);
    w.overlay.windowed = m::WindowedVideo{0.25, 2, 128};
    const auto t = tl::build_timelines(w, cal().system);
    EXPECT_EQ(t[0].scheme, m::Scheme::baseline);
    EXPECT_EQ(t[1].scheme, m::Scheme::baseline);
    EXPECT_EQ(t[2].scheme, m::Scheme::burstlink);
    bl::Bytes edp = 0;
    for (const auto& iv : t[3].intervals) edp += iv.edp_bytes;
    EXPECT_EQ(edp, 1'555'200u + 128u);
}

TEST(SelectScheme, DecisionTable) {
    const m::DisplayConfig d;
    m::PlaneFlags f;
    EXPECT_EQ(sc::select_scheme(f, m::Scheme::burstlink, d), m::Scheme::burstlink);
    auto g = f;
    g.graphics_interrupt = true;
    EXPECT_EQ(sc::select_scheme(g, m::Scheme::burstlink, d), m::Scheme::baseline);
    auto md = f;
    md.multiple_displays = true;
    EXPECT_EQ(sc::select_scheme(md, m::Scheme::burstlink, d), m::Scheme::baseline);
    auto ui = f;
    ui.user_input_interrupt = true;
    EXPECT_EQ(sc::select_scheme(ui, m::Scheme::bypass_only, d), m::Scheme::baseline);
    auto planes = f;
    planes.video_plane_only = false;
    EXPECT_EQ(sc::select_scheme(planes, m::Scheme::burstlink, d), m::Scheme::baseline);
    EXPECT_EQ(sc::select_scheme(g, m::Scheme::bursting_only, d), m::Scheme::bursting_only);
}

TEST(SelectScheme, NeverBypassesWithoutDrfb) {
    m::DisplayConfig d;
    d.drfb_present = false;
    for (int bits = 0; bits < 32; ++bits) {
        m::PlaneFlags f{(bits & 1) == 0, (bits & 2) == 0, (bits & 4) != 0, (bits & 8) != 0, (bits & 16) != 0};
        for (auto s : m::kAllSchemes) {
            const auto r = sc::select_scheme(f, s, d);
            EXPECT_FALSE(m::bypasses_dram(r));
            EXPECT_EQ(r, sc::select_scheme(f, s, d));
        }
    }
}

TEST(SinglePlane, StaticTraceIsNearlyAllC9) {
    std::vector<double> trace(60, 0.0);
    trace[0] = 1.0;
    const auto r = sc::single_plane_burst({}, cal().system, cal(), trace);
    EXPECT_GT(r.bursting.residencies[C9], 0.97);
    const double c9 = cal().profile_for(m::Scheme::bursting_only).power_mw(C9);
    EXPECT_GT(r.reduction_percent, 0);
    EXPECT_LE(r.reduction_percent, 100.0 * (1.0 - c9 / r.conventional.average_power_mw));
}

TEST(SinglePlane, BundledTracesStayUnderC9Bound) {
    const double c9 = cal().profile_for(m::Scheme::bursting_only).power_mw(C9);
    for (const char* name : {"gaming", "conferencing", "productivity"}) {
        const auto trace = sc::load_dirty_trace(std::filesystem::path(BURSTLINK_DATA_DIR) / "traces" / (std::string(name) + ".csv"));
        const auto r = sc::single_plane_burst({}, cal().system, cal(), trace);
        EXPECT_GT(r.reduction_percent, 10.0) << name;
        EXPECT_LT(r.reduction_percent, 100.0 * (1.0 - c9 / r.conventional.average_power_mw)) << name;
    }
}

TEST(SinglePlane, FullDirtyMatchesBurstingTransfer) {
    const std::vector<double> trace(4, 1.0);
    const auto r = sc::single_plane_burst({}, cal().system, cal(), trace);
    auto plans = tl::plan_windows(spec(m::kFHD, 60, m::Scheme::bursting_only, 4), cal().system);
    for (std::size_t i = 0; i < plans.size(); ++i) {
        auto p = plans[i];
        p.orchestration = bl::Duration{0};
        p.decode_bytes = p.encoded_read = p.decode_write = 0;
        p.transfer_start = bl::Duration{0};
        const auto video = tl::build_window(p);
        const auto& plane = r.bursting_timelines[i];
        ASSERT_EQ(video.intervals.size(), plane.intervals.size());
        for (std::size_t k = 0; k < video.intervals.size(); ++k) {
            EXPECT_EQ(video.intervals[k].state, plane.intervals[k].state);
            EXPECT_EQ(video.intervals[k].end, plane.intervals[k].end);
            EXPECT_EQ(video.intervals[k].edp_bytes, plane.intervals[k].edp_bytes);
        }
    }
}

TEST(SinglePlane, MissingTraceIsInputError) {
    try {
        (void)sc::single_plane_burst({}, cal().system, cal(), {});
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::input);
    }
}

TEST(DirtyTrace, Parsing) {
    EXPECT_EQ(sc::parse_dirty_trace("# c\nwindow_index,dirty_fraction\n0,0.5\n1,1\n"), (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(sc::parse_dirty_trace("0,0.25\n"), std::vector<double>{0.25});
    EXPECT_THROW((void)sc::parse_dirty_trace("0,0.5\n2,0.5\n"), bl::Error);
    EXPECT_THROW((void)sc::parse_dirty_trace("0,1.5\n"), bl::Error);
    EXPECT_THROW((void)sc::parse_dirty_trace("window_index,dirty_fraction\n"), bl::Error);
}

TEST(DirtyTrace, BundledTracesLoad) {
    for (const char* name : {"gaming", "conferencing", "productivity"}) {
        const auto t = sc::load_dirty_trace(std::string(BURSTLINK_DATA_DIR) + "/traces/" + name + ".csv");
        EXPECT_EQ(t.size(), 120u) << name;
    }
}
