#include "burstlink/error.hpp"
#include "burstlink/power.hpp"
#include "burstlink/presets.hpp"
#include "burstlink/timeline.hpp"
#include "reference.hpp"

#include <gtest/gtest.h>

namespace bl = burstlink;
namespace m = burstlink::model;
namespace tl = burstlink::timeline;
namespace pw = burstlink::power;
namespace cs = burstlink::cstates;
using enum bl::PackageCState;

namespace {

cs::PowerProfile profile_of(const ref::Row& row) {
    cs::PowerProfile p;
    for (const auto& [s, mw] : row.power_mw) p.states[s] = {mw, {0, 0, mw}};
    return p;
}

tl::Residencies residencies_of(const ref::Row& row) {
    tl::Residencies r;
    for (const auto& [s, pct] : row.residency_percent) r.fraction[bl::index(s)] = pct / 100.0;
    r.total = std::chrono::seconds(1);
    return r;
}

m::WorkloadSpec spec(m::Resolution r, std::uint32_t fps, m::Scheme s, std::uint32_t windows = 60) {
    m::WorkloadSpec w;
    w.display.resolution = r;
    w.video_fps = fps;
    w.scheme = s;
    w.windows_to_simulate = windows;
    return w;
}

const cs::CalibrationSet& cal() { return cs::default_calibration(); }

double reduction(m::Resolution r, std::uint32_t fps, m::Scheme s) {
    return pw::streaming_report(spec(r, fps, s), cal().system, cal()).reduction->percent;
}

} // namespace

TEST(AveragePower, Table2Rows) {
    for (const auto& row : {ref::table2_baseline(), ref::table2_burstlink()}) {
        const double p = pw::average_power(profile_of(row), residencies_of(row), {}, bl::Seconds{1});
        EXPECT_NEAR(p, row.avg_power_mw, 1.0);
        EXPECT_NEAR(p, ref::weighted_power(row), 1e-9);
    }
}

TEST(AveragePower, SingleState) {
    cs::PowerProfile p;
    p.states[C9] = {1090, {}};
    tl::Residencies r;
    r.fraction[bl::index(C9)] = 1.0;
    EXPECT_DOUBLE_EQ(pw::average_power(p, r, {}, bl::Seconds{1}), 1090);
}

TEST(AveragePower, TransitionEnergyIsSpreadOverTotalTime) {
    cs::PowerProfile p;
    p.states[C9] = {1000, {}};
    p.states[C8] = {1000, {}};
    p.transitions[{C8, C9}] = {std::chrono::microseconds(100), 1000.0, {}, 0};
    tl::Residencies r;
    r.fraction[bl::index(C9)] = 1.0;
    const std::vector<tl::TransitionEvent> ev{{bl::Duration{0}, C8, C9}};
    // 100 us at 1 W = 100 uJ over 0.1 s = 1 mW.
    EXPECT_NEAR(pw::average_power(p, r, ev, bl::Seconds{0.1}), 1001.0, 1e-9);
}

TEST(AveragePower, MissingStateIsCalibrationError) {
    cs::PowerProfile p;
    tl::Residencies r;
    r.fraction[bl::index(C3)] = 1.0;
    try {
        (void)pw::average_power(p, r, {}, bl::Seconds{1});
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::calibration);
        EXPECT_NE(std::string(e.what()).find("C3"), std::string::npos);
    }
}

TEST(DramEnergy, BackgroundOnlyWithoutTraffic) {
    m::SystemConfig s;
    s.dram.background_mw = {200, 90, 24, 0};
    s.dram.coeff_read = 1e-10;
    pw::TrafficSummary t;
    t.time[bl::index(bl::DramState::self_refresh)] = std::chrono::seconds(2);
    EXPECT_NEAR(pw::dram_energy(t, s), 0.048, 1e-12);
    EXPECT_EQ(pw::dram_energy_parts(t, s).operating_j, 0.0);
}

TEST(DramEnergy, LinearInTraffic) {
    m::SystemConfig s;
    s.dram.coeff_read = 3e-11;
    s.dram.coeff_write = 7e-11;
    pw::TrafficSummary t;
    t.read_bytes[0] = 1'000'000;
    const double one = pw::dram_energy_parts(t, s).operating_j;
    t.read_bytes[0] = 2'000'000;
    EXPECT_DOUBLE_EQ(pw::dram_energy_parts(t, s).operating_j, 2 * one);
}

TEST(DramEnergy, InvariantToIntervalSubdivision) {
    const auto w = spec(m::k4K, 60, m::Scheme::baseline, 2);
    auto t = tl::build_timelines(w, cal().system);
    const double whole = pw::dram_energy(pw::traffic_summary(t), cal().system);
    for (auto& win : t) {
        std::vector<tl::Interval> split;
        for (const auto& iv : win.intervals) {
            if (iv.span().count() < 2) {
                split.push_back(iv);
                continue;
            }
            auto a = iv, b = iv;
            a.end = b.start = iv.start + iv.span() / 2;
            a.frame_read = iv.frame_read / 2;
            b.frame_read = iv.frame_read - a.frame_read;
            a.frame_write = iv.frame_write / 3;
            b.frame_write = iv.frame_write - a.frame_write;
            a.encoded_read = 0;
            split.push_back(a);
            split.push_back(b);
        }
        win.intervals = split;
    }
    EXPECT_NEAR(pw::dram_energy(pw::traffic_summary(t), cal().system), whole, whole * 1e-12);
}

TEST(DramEnergy, BaselineUsesOverThreeTimesBurstlinkAt4K) {
    const auto b = pw::streaming_report(spec(m::k4K, 60, m::Scheme::baseline), cal().system, cal());
    const auto l = pw::streaming_report(spec(m::k4K, 60, m::Scheme::burstlink), cal().system, cal());
    EXPECT_GT(b.per_second.dram_j, 3 * l.per_second.dram_j);
    EXPECT_EQ(l.traffic.total_write(), 0u);
    EXPECT_EQ(l.traffic.total_read(), 60u * static_cast<bl::Bytes>(0.02 * ref::frame_bytes(3840, 2160, 24)));
}

TEST(TrafficSummary, BytesOnlyInActiveDram) {
    for (auto s : m::kAllSchemes) {
        const auto t = tl::build_timelines(spec(m::kQHD, 30, s, 4), cal().system);
        const auto sum = pw::traffic_summary(t);
        for (auto d : {bl::DramState::fast_powerdown, bl::DramState::self_refresh, bl::DramState::off}) {
            EXPECT_EQ(sum.read_bytes[bl::index(d)], 0u);
            EXPECT_EQ(sum.write_bytes[bl::index(d)], 0u);
        }
        EXPECT_EQ(sum.total_time(), m::window_start(4, 60));
    }
}

TEST(WindowBreakdown, AllC9Window) {
    tl::WindowTimeline t;
    t.duration = m::frame_window(60);
    t.intervals.push_back({tl::IntervalKind::steady, C9, C9, bl::Duration{0}, t.duration});
    const auto& p = cal().profile_for(m::Scheme::burstlink);
    const auto r = pw::window_energy_breakdown(t, p, cal().system);
    EXPECT_NEAR(r.total.total_j, 1.090 * bl::to_seconds(t.duration), 1e-12);
    t.intervals[0].drfb_active = true;
    const auto r2 = pw::window_energy_breakdown(t, p, cal().system);
    EXPECT_NEAR(r2.total.total_j, (1.090 + 0.058) * bl::to_seconds(t.duration), 1e-12);
}

TEST(WindowBreakdown, NegativeOthersIsCalibrationError) {
    tl::WindowTimeline t;
    t.duration = m::frame_window(60);
    t.intervals.push_back({tl::IntervalKind::steady, C9, C9, bl::Duration{0}, t.duration});
    cs::PowerProfile p;
    p.states[C9] = {100, {0, 50, 50}};
    p.drfb_active_power_adder_mw = 0;
    m::SystemConfig s = cal().system;
    s.dram.background_mw[bl::index(bl::DramState::self_refresh)] = 500;
    try {
        (void)pw::window_energy_breakdown(t, p, s);
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::calibration);
    }
}

TEST(StreamingReport, BaselineAgainstItselfIsZero) {
    const auto r = pw::streaming_report(spec(m::kFHD, 30, m::Scheme::baseline), cal().system, cal());
    ASSERT_TRUE(r.reduction.has_value());
    EXPECT_EQ(r.reduction->percent, 0.0);
}

TEST(StreamingReport, CalibratedReductions) {
    EXPECT_NEAR(reduction(m::k4K, 60, m::Scheme::burstlink), 41, 3);
    EXPECT_NEAR(reduction(m::kFHD, 30, m::Scheme::burstlink), 37, 3);
    EXPECT_GE(reduction(m::kFHD, 60, m::Scheme::burstlink), reduction(m::kFHD, 30, m::Scheme::burstlink));
}

TEST(StreamingReport, NoReferenceWhenDisabled) {
    const auto r = pw::streaming_report(spec(m::kFHD, 30, m::Scheme::burstlink), cal().system, cal(), {std::nullopt});
    EXPECT_FALSE(r.reduction.has_value());
}

TEST(StreamingReport, LabelsFittedCoefficients) {
    const auto r = pw::streaming_report(spec(m::kFHD, 30, m::Scheme::baseline), cal().system, cal());
    bool labelled = false;
    for (const auto& n : r.notes) labelled |= n.find("fitted") != std::string::npos;
    EXPECT_TRUE(labelled);
}

TEST(StreamingReport, TransitionEnergyNegligibleForTable2Workloads) {
    for (auto s : {m::Scheme::baseline, m::Scheme::burstlink}) {
        const auto r = pw::streaming_report(spec(m::kFHD, 30, s), cal().system, cal());
        EXPECT_LT(r.transition_energy_j / r.total.total_j, 0.01) << m::to_string(s);
        EXPECT_GT(r.transition_count, 0u);
    }
}

TEST(StreamingReport, ComponentsSumAndMatchAveragePower) {
    for (auto s : m::kAllSchemes) {
        const auto r = pw::streaming_report(spec(m::kQHD, 30, s), cal().system, cal());
        const auto& e = r.total;
        EXPECT_NEAR(e.dram_j + e.display_j + e.others_j, e.total_j, 1e-3 * e.total_j);
        EXPECT_NEAR(r.average_power_mw * 1e-3 * r.simulated_seconds, e.total_j, 1e-3 * e.total_j);
        const auto t = tl::build_timelines(spec(m::kQHD, 30, s), cal().system);
        const double direct = pw::timeline_average_power(t, cal().profile_for(s), cal().system);
        EXPECT_NEAR(direct, r.average_power_mw, 1e-4 * r.average_power_mw) << m::to_string(s);
    }
}

TEST(StreamingReport, Table2PresetsNeedNoTransitions) {
    const auto p = bl::presets::preset("table2-baseline");
    const auto r = pw::streaming_report(p.workload, p.calibration.system, p.calibration);
    EXPECT_EQ(r.transition_energy_j, 0.0);
    EXPECT_NEAR(r.average_power_mw, 2162, 1);
}
