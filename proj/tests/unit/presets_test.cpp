#include "burstlink/crosscheck.hpp"
#include "burstlink/error.hpp"
#include "burstlink/power.hpp"
#include "burstlink/presets.hpp"

#include <gtest/gtest.h>

#include <set>

namespace bl = burstlink;
namespace m = burstlink::model;
namespace ps = burstlink::presets;

TEST(Presets, EveryNamedPresetIsValid) {
    const auto names = ps::preset_names();
    EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
    for (const char* needed : {"table2-baseline", "table2-burstlink", "fig12-4k-fbc50", "batching-4k",
                               "4k-60-burstlink", "vr-qhd-30-burstlink"})
        EXPECT_NE(std::find(names.begin(), names.end(), needed), names.end()) << needed;
    for (const auto& n : names) {
        const auto p = ps::preset(n);
        EXPECT_EQ(p.name, n);
        EXPECT_FALSE(p.description.empty());
        const auto v = m::validate_config(p.workload, p.calibration.system);
        EXPECT_TRUE(v.ok()) << n << ": " << (v.ok() ? "" : v.violations.front().code);
    }
}

TEST(Presets, UnknownNamesAreInputErrors) {
    try {
        (void)ps::preset("nope");
        FAIL();
    } catch (const bl::Error& e) {
        EXPECT_EQ(e.code(), bl::ErrorCode::input);
    }
    EXPECT_THROW((void)ps::sweep("nope"), bl::Error);
}

TEST(Presets, Table2AveragePowers) {
    for (const auto& [name, target] : {std::pair{"table2-baseline", 2162.0}, std::pair{"table2-burstlink", 1274.0}}) {
        const auto p = ps::preset(name);
        const auto r = bl::power::streaming_report(p.workload, p.calibration.system, p.calibration);
        EXPECT_NEAR(r.average_power_mw, target, 1.0) << name;
    }
}

TEST(Sweep, ExpandOrderAndLabels) {
    ps::SweepGrid g;
    g.resolutions = {m::kFHD, m::k4K};
    g.fps = {30, 60};
    g.schemes = {m::Scheme::baseline, m::Scheme::burstlink};
    g.windows = 5;
    const auto pts = ps::expand(g);
    ASSERT_EQ(pts.size(), 8u);
    EXPECT_EQ(pts[0].label, "FHD/30/planar/baseline/fbc=1/batch=1");
    EXPECT_EQ(pts[1].label, "FHD/30/planar/burstlink/fbc=1/batch=1");
    EXPECT_EQ(pts[7].label, "4K/60/planar/burstlink/fbc=1/batch=1");
    std::set<std::string> labels;
    for (const auto& p : pts) {
        labels.insert(p.label);
        EXPECT_EQ(p.workload.windows_to_simulate, 5u);
    }
    EXPECT_EQ(labels.size(), pts.size());
    g.fps.clear();
    EXPECT_TRUE(ps::expand(g).empty());
}

TEST(Sweep, NamedSweepsExist) {
    for (const auto& n : ps::sweep_names()) EXPECT_FALSE(ps::expand(ps::sweep(n).grid).empty()) << n;
    EXPECT_EQ(ps::expand(ps::sweep("fig8").grid).size(), 32u);
}

TEST(Crosscheck, GridHasFiftyCases) {
    const auto g = bl::crosscheck::oracle_grid();
    EXPECT_EQ(g.size(), 50u);
    std::size_t vr = 0;
    for (const auto& c : g) vr += c.workload.kind == m::VideoKind::vr360;
    EXPECT_EQ(vr, 18u);
}

TEST(Crosscheck, SingleCaseAgrees) {
    m::WorkloadSpec w;
    w.display.resolution = m::k4K;
    w.video_fps = 60;
    w.scheme = m::Scheme::burstlink;
    w.windows_to_simulate = 2;
    const auto& cal = bl::cstates::default_calibration();
    const auto d = bl::crosscheck::compare_with_oracle(w, cal.system, cal);
    EXPECT_LT(d.max_residency_pp, 0.1);
    EXPECT_LT(d.max_window_energy_rel, 1e-3);
}
