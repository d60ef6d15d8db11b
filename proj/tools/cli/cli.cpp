#include "cli.hpp"

#include "burstlink/calibrate.hpp"
#include "burstlink/calibration_io.hpp"
#include "burstlink/crosscheck.hpp"
#include "burstlink/error.hpp"
#include "burstlink/power.hpp"
#include "burstlink/presets.hpp"
#include "burstlink/report_io.hpp"
#include "burstlink/scenarios.hpp"
#include "burstlink/timeline.hpp"
#include "burstlink/timeline_export.hpp"
#include "burstlink/workload_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

namespace burstlink::cli {

namespace fs = std::filesystem;
using model::Scheme;

namespace {

struct Source {
    std::string config;
    std::string preset;
    std::string calibration;
    std::optional<std::uint32_t> windows;
};

/// A resolved simulation input.
struct Resolved {
    model::WorkloadSpec workload;
    model::SystemConfig system;
    cstates::CalibrationSet calibration;
    std::optional<Scheme> reference = Scheme::baseline;
    std::string origin; ///< config path or "preset:<name>"
};

void add_source_options(CLI::App& app, Source& s, bool with_windows = true) {
    app.add_option("--config", s.config, "run configuration (JSON)");
    app.add_option("--preset", s.preset, "named preset (see `presets`)");
    app.add_option("--calibration", s.calibration, "calibration file (JSON)");
    if (with_windows) app.add_option("--windows", s.windows, "frame windows to simulate")->check(CLI::PositiveNumber);
}

cstates::CalibrationSet calibration_or_default(const std::string& path) {
    return path.empty() ? cstates::default_calibration() : cstates::load_calibration(path);
}

Resolved resolve(const Source& s) {
    if (s.config.empty() == s.preset.empty())
        throw Error(ErrorCode::input, "give exactly one of --config or --preset");
    Resolved r;
    if (!s.preset.empty()) {
        auto p = presets::preset(s.preset);
        r.workload = p.workload;
        r.calibration = s.calibration.empty() ? p.calibration : cstates::load_calibration(s.calibration);
        r.reference = p.reference;
        r.origin = "preset:" + s.preset;
        r.system = r.calibration.system;
    } else {
        const auto c = model::load_run_config(s.config);
        r.workload = c.workload;
        if (!s.calibration.empty())
            r.calibration = cstates::load_calibration(s.calibration);
        else if (c.calibration)
            r.calibration = cstates::load_calibration(*c.calibration);
        else
            r.calibration = cstates::default_calibration();
        r.system = c.system ? cstates::system_from_json(*c.system, r.calibration.system) : r.calibration.system;
        r.reference = c.reference;
        r.origin = s.config;
    }
    if (s.windows) r.workload.windows_to_simulate = *s.windows;
    return r;
}

std::string joined(const std::vector<std::string>& args) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + (i == 0 ? std::string("burstlink") : args[i]);
    return s;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::input, "cannot write " + path.string());
    out << text;
}

/// Prints violations as "violation<TAB>code<TAB>message" lines. True when valid.
bool report_violations(const model::WorkloadSpec& w, const model::SystemConfig& sys, std::ostream& err) {
    const auto v = model::validate_config(w, sys);
    for (const auto& x : v.violations) err << "violation\t" << x.code << '\t' << x.message << '\n';
    return v.ok();
}

power::EnergyReport simulate_report(const Resolved& r) {
    return power::streaming_report(r.workload, r.system, r.calibration, {r.reference});
}

int exit_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::invalid_config:
    case ErrorCode::infeasible_config:
    case ErrorCode::unsupported_scheme:
    case ErrorCode::input: return usage_error;
    default: return runtime_error;
    }
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    Source source;
    std::string out = ".";
    std::string format = "both";
    std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    const auto r = resolve(a.source);
    if (!report_violations(r.workload, r.system, err)) return usage_error;

    const auto timelines = timeline::build_timelines(r.workload, r.system);
    const auto rep = simulate_report(r);

    report::RunManifest m;
    m.config_paths = {r.origin};
    m.command = joined(args);
    m.output_dir = a.out;
    m.seed = a.seed;
    m.calibration = r.calibration.name;

    const fs::path dir = a.out;
    if (a.format == "json" || a.format == "both") write_file(dir / "report.json", report::report_json(rep, m));
    if (a.format == "csv" || a.format == "both")
        write_file(dir / "report.csv",
                   report::csv_preamble(m) + report::csv_header() + report::csv_row(rep, r.origin));
    write_file(dir / "timeline.csv", timeline::timelines_csv(timelines));
    write_file(dir / "timeline.svg", timeline::timelines_svg(timelines, r.origin));

    out << fmt::format("{}: {} average {} mW", r.origin, rep.scheme, report::format_number(rep.average_power_mw));
    if (rep.reduction)
        out << fmt::format(", {}% vs {}", report::format_number(rep.reduction->percent),
                           rep.reduction->reference_scheme);
    out << '\n';
    for (const auto& n : rep.notes) out << "note: " << n << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    Source source; ///< base workload and calibration; --preset names a sweep preset here
    std::vector<std::string> resolutions, schemes, kinds;
    std::vector<std::uint32_t> fps, batch;
    std::vector<double> fbc;
    std::optional<std::uint32_t> refresh;
    std::string out = ".";
    unsigned jobs = 0;
    std::optional<std::uint64_t> seed;
};

std::string sweep_header() {
    auto h = report::csv_header();
    return "resolution,fps,kind,fbc_ratio,batch_frames,status,detail," + h;
}

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    presets::SweepGrid grid;
    model::WorkloadSpec base;
    cstates::CalibrationSet cal = calibration_or_default(a.source.calibration);
    std::optional<model::SystemConfig> system;
    std::string origin;
    if (!a.source.preset.empty()) {
        grid = presets::sweep(a.source.preset).grid;
        origin = "sweep:" + a.source.preset;
    } else {
        grid.resolutions.clear();
        grid.fps.clear();
        grid.schemes.clear();
        grid.kinds.clear();
        grid.fbc_ratios.clear();
        grid.batch_frames.clear();
    }
    if (!a.source.config.empty()) {
        const auto c = model::load_run_config(a.source.config);
        base = c.workload;
        if (a.source.calibration.empty() && c.calibration) cal = cstates::load_calibration(*c.calibration);
        if (c.system) system = cstates::system_from_json(*c.system, cal.system);
        origin = origin.empty() ? a.source.config : origin + "+" + a.source.config;
        grid.refresh_hz = base.display.refresh_hz;
        grid.windows = base.windows_to_simulate;
    }
    const auto sys = system.value_or(cal.system);

    for (const auto& s : a.resolutions) {
        const auto r = model::parse_resolution(s);
        if (!r) throw Error(ErrorCode::input, "unknown resolution '" + s + "'");
        if (&s == &a.resolutions.front()) grid.resolutions.clear();
        grid.resolutions.push_back(*r);
    }
    for (const auto& s : a.schemes) {
        const auto v = model::parse_scheme(s);
        if (!v) throw Error(ErrorCode::input, "unknown scheme '" + s + "'");
        if (&s == &a.schemes.front()) grid.schemes.clear();
        grid.schemes.push_back(*v);
    }
    for (const auto& s : a.kinds) {
        const auto v = model::parse_kind(s);
        if (!v) throw Error(ErrorCode::input, "unknown video kind '" + s + "'");
        if (&s == &a.kinds.front()) grid.kinds.clear();
        grid.kinds.push_back(*v);
    }
    if (!a.fps.empty()) grid.fps = a.fps;
    if (!a.fbc.empty()) grid.fbc_ratios = a.fbc;
    if (!a.batch.empty()) grid.batch_frames = a.batch;
    if (a.refresh) grid.refresh_hz = *a.refresh;
    if (a.source.windows) grid.windows = *a.source.windows;
    // Axes not given fall back to the base workload.
    if (grid.resolutions.empty() && !a.source.config.empty()) grid.resolutions = {base.display.resolution};
    if (grid.fps.empty() && !a.source.config.empty()) grid.fps = {base.video_fps};
    if (grid.schemes.empty() && !a.source.config.empty()) grid.schemes = {base.scheme};
    if (grid.kinds.empty()) grid.kinds = {base.kind};
    if (grid.fbc_ratios.empty()) grid.fbc_ratios = {base.overlay.fbc_ratio};
    if (grid.batch_frames.empty()) grid.batch_frames = {base.overlay.batch_frames};

    const auto points = presets::expand(grid, base);
    if (points.empty()) {
        err << "sweep: empty grid (give --preset, --config or axis options)\n";
        return usage_error;
    }

    std::vector<std::string> rows(points.size());
    const auto eval = [&](std::size_t i) {
        const auto& p = points[i];
        const auto& w = p.workload;
        const std::string lead = fmt::format("{},{},{},{},{},", model::resolution_name(w.display.resolution),
                                             w.video_fps, model::to_string(w.kind),
                                             report::format_number(w.overlay.fbc_ratio), w.overlay.batch_frames);
        const auto v = model::validate_config(w, sys);
        if (!v.ok()) {
            rows[i] = lead + "skipped," + v.violations.front().code + "," + p.label + "," +
                      std::string(model::to_string(w.scheme)) + "\n";
            return;
        }
        try {
            const auto rep = power::streaming_report(w, sys, cal);
            rows[i] = lead + "ok,," + report::csv_row(rep, p.label);
        } catch (const Error& e) {
            rows[i] = lead + "skipped," + std::string(to_string(e.code())) + "," + p.label + "," +
                      std::string(model::to_string(w.scheme)) + "\n";
        }
    };

    const unsigned jobs = std::max(1u, a.jobs ? a.jobs : std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(jobs, points.size()); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < points.size();) eval(i);
        });
    for (std::size_t i; (i = next++) < points.size();) eval(i);
    for (auto& t : pool) t.join();

    report::RunManifest m;
    m.config_paths = {origin.empty() ? std::string("axes") : origin};
    m.command = joined(args);
    m.output_dir = a.out;
    m.seed = a.seed;
    m.calibration = cal.name;
    std::string text = report::csv_preamble(m) + sweep_header();
    std::size_t skipped = 0;
    for (const auto& row : rows) {
        text += row;
        skipped += row.find(",skipped,") != std::string::npos;
    }
    write_file(fs::path(a.out) / "sweep.csv", text);
    out << fmt::format("sweep: {} points, {} skipped -> {}\n", points.size(), skipped,
                       (fs::path(a.out) / "sweep.csv").string());
    return ok;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string a, b, calibration, out = ".";
    std::optional<std::uint32_t> windows;
};

Resolved resolve_named(const std::string& what, const std::string& calibration,
                       std::optional<std::uint32_t> windows) {
    Source s;
    s.calibration = calibration;
    s.windows = windows;
    if (fs::exists(what))
        s.config = what;
    else
        s.preset = what.rfind("preset:", 0) == 0 ? what.substr(7) : what;
    return resolve(s);
}

double pct_delta(double a, double b) { return a == 0 ? 0.0 : 100.0 * (b - a) / a; }

int cmd_compare(const CompareArgs& c, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    auto ra = resolve_named(c.a, c.calibration, c.windows);
    auto rb = resolve_named(c.b, c.calibration, c.windows);
    ra.reference.reset();
    rb.reference.reset();
    bool valid = report_violations(ra.workload, ra.system, err);
    valid = report_violations(rb.workload, rb.system, err) && valid;
    if (!valid) return usage_error;

    const auto ea = simulate_report(ra);
    const auto eb = simulate_report(rb);

    nlohmann::json j;
    std::vector<std::string> warnings;
    const auto& da = ra.workload.display;
    const auto& db = rb.workload.display;
    if (da.resolution != db.resolution || da.refresh_hz != db.refresh_hz || da.bits_per_pixel != db.bits_per_pixel)
        warnings.push_back("display configurations differ");
    if (ra.workload.video_fps != rb.workload.video_fps) warnings.push_back("video frame rates differ");

    const auto comp = [](const power::ComponentEnergy& a, const power::ComponentEnergy& b) {
        nlohmann::json x;
        for (const auto& [name, va, vb] :
             {std::tuple{"dram", a.dram_j, b.dram_j}, std::tuple{"display", a.display_j, b.display_j},
              std::tuple{"others", a.others_j, b.others_j}, std::tuple{"total", a.total_j, b.total_j}})
            x[name] = {{"a_j_per_s", va}, {"b_j_per_s", vb}, {"delta_percent", pct_delta(va, vb)}};
        return x;
    };
    nlohmann::json res = nlohmann::json::object();
    for (auto s : kAllStates)
        if (ea.residencies[s] != 0 || eb.residencies[s] != 0)
            res[std::string(to_string(s))] = {{"a", ea.residencies[s]},
                                              {"b", eb.residencies[s]},
                                              {"delta_pp", 100.0 * (eb.residencies[s] - ea.residencies[s])}};
    j["a"] = {{"source", ra.origin}, {"scheme", ea.scheme}, {"average_power_mw", ea.average_power_mw}};
    j["b"] = {{"source", rb.origin}, {"scheme", eb.scheme}, {"average_power_mw", eb.average_power_mw}};
    j["average_power_delta_percent"] = pct_delta(ea.average_power_mw, eb.average_power_mw);
    j["energy_per_second"] = comp(ea.per_second, eb.per_second);
    j["residencies"] = res;
    j["warnings"] = warnings;

    report::RunManifest m;
    m.config_paths = {ra.origin, rb.origin};
    m.command = joined(args);
    m.output_dir = c.out;
    m.calibration = ra.calibration.name == rb.calibration.name ? ra.calibration.name
                                                               : ra.calibration.name + "," + rb.calibration.name;
    j["manifest"] = report::to_json(m);
    write_file(fs::path(c.out) / "compare.json", j.dump(2) + "\n");

    std::string csv = report::csv_preamble(m) + "component,a_j_per_s,b_j_per_s,delta_percent\n";
    for (const auto& name : {"dram", "display", "others", "total"}) {
        const auto& x = j["energy_per_second"][name];
        csv += fmt::format("{},{},{},{}\n", name, report::format_number(x["a_j_per_s"].get<double>()),
                           report::format_number(x["b_j_per_s"].get<double>()),
                           report::format_number(x["delta_percent"].get<double>()));
    }
    write_file(fs::path(c.out) / "compare.csv", csv);

    for (const auto& w : warnings) out << "warning: " << w << '\n';
    out << fmt::format("{:<10} {:>12} {:>12} {:>10}\n", "", "a", "b", "delta %");
    for (const auto& name : {"dram", "display", "others", "total"}) {
        const auto& x = j["energy_per_second"][name];
        out << fmt::format("{:<10} {:>12.4f} {:>12.4f} {:>10.2f}\n", name, x["a_j_per_s"].get<double>(),
                           x["b_j_per_s"].get<double>(), x["delta_percent"].get<double>());
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct CalibrateArgs {
    std::string runs, out = ".", name = "fitted", scheme = "baseline", calibration;
    std::vector<std::string> states;
    std::optional<std::size_t> generate;
    double noise = 0.02;
    std::uint64_t seed = 1;
    bool seed_given = false;
};

std::vector<PackageCState> parse_states(const std::vector<std::string>& names) {
    std::vector<PackageCState> out;
    for (const auto& n : names) {
        const auto s = parse_state(n);
        if (!s) throw Error(ErrorCode::input, "unknown state '" + n + "'");
        out.push_back(*s);
    }
    return out;
}

int cmd_calibrate(const CalibrateArgs& c, const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
    const auto scheme = model::parse_scheme(c.scheme);
    if (!scheme) throw Error(ErrorCode::input, "unknown scheme '" + c.scheme + "'");
    auto base = calibration_or_default(c.calibration);

    report::RunManifest m;
    m.command = joined(args);
    m.output_dir = c.out;
    m.calibration = base.name;

    if (c.generate) {
        const auto states = c.states.empty()
                                ? std::vector<PackageCState>{PackageCState::C0, PackageCState::C2,
                                                             PackageCState::C7, PackageCState::C8,
                                                             PackageCState::C9}
                                : parse_states(c.states);
        const auto runs =
            calibrate::generate_runs(base.profile_for(*scheme), states, *c.generate, c.noise, c.seed);
        write_file(fs::path(c.out) / "runs.csv", calibrate::runs_to_csv(runs, states));
        out << fmt::format("generated {} synthetic runs -> {}\n", runs.size(),
                           (fs::path(c.out) / "runs.csv").string());
        return ok;
    }
    if (c.runs.empty()) {
        err << "calibrate: --runs or --generate is required\n";
        return usage_error;
    }
    const auto runs = calibrate::load_runs_csv(c.runs);
    m.config_paths = {c.runs};
    if (c.seed_given) m.seed = c.seed;
    const auto states = c.states.empty() ? calibrate::states_in(runs) : parse_states(c.states);
    calibrate::FitResult fit;
    try {
        fit = calibrate::fit_state_powers(runs, states);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.code() == ErrorCode::under_determined ? runtime_error : exit_for(e);
    }
    const auto& source = base.profile_for(*scheme);
    auto profile = fit.to_profile(std::string(model::to_string(*scheme)), &source);
    for (const auto& [s, sp] : source.states)
        if (!profile.has(s)) profile.states[s] = sp;
    const auto acc = calibrate::model_accuracy(profile, runs);

    cstates::CalibrationSet set = base;
    set.name = c.name;
    set.description = "state powers fitted from " + c.runs;
    set.profiles[*scheme] = profile;
    auto j = cstates::to_json(set);
    nlohmann::json fitted = nlohmann::json::object();
    for (const auto& [s, mw] : fit.power_mw) fitted[std::string(to_string(s))] = mw;
    nlohmann::json per_state = nlohmann::json::object();
    for (const auto& [s, a] : acc.per_state_percent)
        per_state[std::string(to_string(s))] = {{"accuracy_percent", a}, {"runs", acc.per_state_runs.at(s)}};
    j["fit"] = {{"method", "non-negative least squares over measured average power"},
                {"runs", runs.size()},
                {"fitted_mw", fitted},
                {"rms_residual_mw", fit.rms_residual_mw},
                {"accuracy_percent", acc.overall_percent},
                {"per_state", per_state},
                {"manifest", report::to_json(m)}};
    write_file(fs::path(c.out) / "calibration.json", j.dump(2) + "\n");

    std::string csv = report::csv_preamble(m) + "label,measured_mw,predicted_mw,residual_mw\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
        csv += fmt::format("{},{},{},{}\n", runs[i].label, report::format_number(runs[i].measured_avg_power_mw),
                           report::format_number(runs[i].measured_avg_power_mw - fit.residuals_mw[i]),
                           report::format_number(fit.residuals_mw[i]));
    write_file(fs::path(c.out) / "residuals.csv", csv);

    for (const auto& [s, mw] : fit.power_mw) out << fmt::format("{:<4} {:>10.2f} mW\n", to_string(s), mw);
    out << fmt::format("rms residual {:.4f} mW, accuracy {:.2f}%\n", fit.rms_residual_mw, acc.overall_percent);
    for (const auto& [s, a] : acc.per_state_percent)
        out << fmt::format("  {} dominated runs: {:.2f}% ({} runs)\n", to_string(s), a, acc.per_state_runs.at(s));
    return ok;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
    Source source;
    bool grid = false;
    std::int64_t tick_ns = 1000;
    std::string out;
    double max_residency_pp = 0.1;
    double max_energy_percent = 0.1;
};

int cmd_validate(const ValidateArgs& v, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    std::vector<crosscheck::GridCase> cases;
    model::SystemConfig sys;
    cstates::CalibrationSet cal;
    if (v.grid) {
        cal = calibration_or_default(v.source.calibration);
        sys = cal.system;
        cases = crosscheck::oracle_grid(v.source.windows.value_or(4));
    } else {
        const auto r = resolve(v.source);
        if (!report_violations(r.workload, r.system, err)) return usage_error;
        cal = r.calibration;
        sys = r.system;
        cases.push_back({r.origin, r.workload});
    }
    std::string csv = "label,max_residency_pp,max_window_energy_percent,total_energy_percent\n";
    double worst_r = 0, worst_e = 0;
    for (const auto& c : cases) {
        const auto d = crosscheck::compare_with_oracle(c.workload, sys, cal, Duration{v.tick_ns});
        worst_r = std::max(worst_r, d.max_residency_pp);
        worst_e = std::max(worst_e, 100.0 * d.max_window_energy_rel);
        csv += fmt::format("{},{},{},{}\n", c.label, report::format_number(d.max_residency_pp),
                           report::format_number(100.0 * d.max_window_energy_rel),
                           report::format_number(100.0 * d.total_energy_rel));
    }
    if (!v.out.empty()) {
        report::RunManifest m;
        m.config_paths = {v.grid ? std::string("oracle-grid") : cases.front().label};
        m.command = joined(args);
        m.output_dir = v.out;
        m.calibration = cal.name;
        write_file(fs::path(v.out) / "validate.csv", report::csv_preamble(m) + csv);
    }
    const bool pass = worst_r < v.max_residency_pp && worst_e < v.max_energy_percent;
    out << fmt::format("{} configs, tick {} ns: max residency deviation {:.5f} pp, max window energy deviation "
                       "{:.5f}% -> {}\n",
                       cases.size(), v.tick_ns, worst_r, worst_e, pass ? "PASS" : "FAIL");
    return pass ? ok : runtime_error;
}

// ---------------------------------------------------------------------------

struct SinglePlaneArgs {
    std::string trace, resolution = "FHD", calibration, out = ".";
    std::uint32_t refresh = 60;
};

int cmd_single_plane(const SinglePlaneArgs& a, const std::vector<std::string>& args, std::ostream& out,
                     std::ostream&) {
    const auto res = model::parse_resolution(a.resolution);
    if (!res) throw Error(ErrorCode::input, "unknown resolution '" + a.resolution + "'");
    model::DisplayConfig d;
    d.resolution = *res;
    d.refresh_hz = a.refresh;
    const auto cal = calibration_or_default(a.calibration);
    const auto trace = scenarios::load_dirty_trace(a.trace);
    const auto cmp = scenarios::single_plane_burst(d, cal.system, cal, trace);

    report::RunManifest m;
    m.config_paths = {a.trace};
    m.command = joined(args);
    m.output_dir = a.out;
    m.calibration = cal.name;
    nlohmann::json j{{"conventional", report::to_json(cmp.conventional)},
                     {"bursting", report::to_json(cmp.bursting)},
                     {"reduction_percent", cmp.reduction_percent},
                     {"manifest", report::to_json(m)}};
    write_file(fs::path(a.out) / "single_plane.json", j.dump(2) + "\n");
    out << fmt::format("{} windows: conventional {:.1f} mW, bursting {:.1f} mW, reduction {:.2f}%\n", trace.size(),
                       cmp.conventional.average_power_mw, cmp.bursting.average_power_mw, cmp.reduction_percent);
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Package C-state timelines and energy of video display pipelines", "burstlink"};
    app.set_version_flag("--version", std::string(burstlink::version()));
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate one workload and write reports and timelines");
    add_source_options(*simulate, sim.source);
    simulate->add_option("--out", sim.out, "output directory");
    simulate->add_option("--format", sim.format, "report format")->check(CLI::IsMember({"json", "csv", "both"}));
    simulate->add_option("--seed", sim.seed, "seed recorded in the manifest");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "evaluate a grid of workloads into one long-form CSV");
    sweep->add_option("--config", sw.source.config, "base run configuration (JSON)");
    sweep->add_option("--preset", sw.source.preset, "named sweep (see `presets`)");
    sweep->add_option("--calibration", sw.source.calibration, "calibration file (JSON)");
    sweep->add_option("--windows", sw.source.windows, "frame windows per point")->check(CLI::PositiveNumber);
    sweep->add_option("--resolutions", sw.resolutions, "FHD,QHD,4K,5K or WxH")->delimiter(',');
    sweep->add_option("--fps", sw.fps, "video frame rates")->delimiter(',');
    sweep->add_option("--schemes", sw.schemes, "baseline,bypass_only,bursting_only,burstlink")->delimiter(',');
    sweep->add_option("--kinds", sw.kinds, "planar,vr360")->delimiter(',');
    sweep->add_option("--fbc", sw.fbc, "frame-buffer compression ratios")->delimiter(',');
    sweep->add_option("--batch", sw.batch, "decode batch sizes")->delimiter(',');
    sweep->add_option("--refresh", sw.refresh, "panel refresh rate");
    sweep->add_option("--out", sw.out, "output directory");
    sweep->add_option("--jobs", sw.jobs, "worker threads (0: all cores)");
    sweep->add_option("--seed", sw.seed, "seed recorded in the manifest");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "side-by-side energy of two configurations");
    compare->add_option("a", cmp.a, "config path or preset name")->required();
    compare->add_option("b", cmp.b, "config path or preset name")->required();
    compare->add_option("--calibration", cmp.calibration, "calibration file (JSON)");
    compare->add_option("--windows", cmp.windows, "frame windows to simulate")->check(CLI::PositiveNumber);
    compare->add_option("--out", cmp.out, "output directory");

    CalibrateArgs cal;
    auto* calibrate = app.add_subcommand("calibrate", "fit state powers from measured runs");
    calibrate->add_option("--runs", cal.runs, "runs CSV (label, state columns, power_mw[, bw])");
    calibrate->add_option("--states", cal.states, "states to fit (default: those present)")->delimiter(',');
    calibrate->add_option("--scheme", cal.scheme, "profile the fit replaces");
    calibrate->add_option("--calibration", cal.calibration, "base calibration (JSON)");
    calibrate->add_option("--name", cal.name, "name of the fitted calibration");
    calibrate->add_option("--out", cal.out, "output directory");
    calibrate->add_option("--generate", cal.generate, "write N synthetic runs from the base profile instead");
    calibrate->add_option("--noise", cal.noise, "multiplicative noise for --generate");
    auto* seed_opt = calibrate->add_option("--seed", cal.seed, "seed for --generate");

    ValidateArgs val;
    auto* validate = app.add_subcommand("validate", "compare analytic timelines with the fixed-tick oracle");
    add_source_options(*validate, val.source);
    validate->add_flag("--grid", val.grid, "run the 50-configuration grid");
    validate->add_option("--tick", val.tick_ns, "oracle tick in ns (<= 1000)");
    validate->add_option("--out", val.out, "write validate.csv here");

    SinglePlaneArgs sp;
    auto* single = app.add_subcommand("single-plane", "burst a one-plane graphics workload from a dirty trace");
    single->add_option("--trace", sp.trace, "dirty-fraction trace CSV")->required();
    single->add_option("--resolution", sp.resolution, "panel resolution");
    single->add_option("--refresh", sp.refresh, "panel refresh rate");
    single->add_option("--calibration", sp.calibration, "calibration file (JSON)");
    single->add_option("--out", sp.out, "output directory");

    auto* list = app.add_subcommand("presets", "list presets and sweeps");

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << burstlink::version() << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*simulate) return cmd_simulate(sim, args, out, err);
        if (*sweep) return cmd_sweep(sw, args, out, err);
        if (*compare) return cmd_compare(cmp, args, out, err);
        if (*calibrate) {
            cal.seed_given = seed_opt->count() > 0;
            return cmd_calibrate(cal, args, out, err);
        }
        if (*validate) return cmd_validate(val, args, out, err);
        if (*single) return cmd_single_plane(sp, args, out, err);
        if (*list) {
            for (const auto& n : presets::preset_names())
                out << fmt::format("{:<28} {}\n", n, presets::preset(n).description);
            for (const auto& n : presets::sweep_names())
                out << fmt::format("sweep:{:<22} {}\n", n, presets::sweep(n).description);
            return ok;
        }
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_error;
    }
    return usage_error;
}

} // namespace burstlink::cli
