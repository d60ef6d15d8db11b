#include "burstlink/timeline_export.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace burstlink::timeline {

std::string_view state_color(PackageCState s) noexcept {
    switch (s) {
    case PackageCState::C0: return "#d62728";
    case PackageCState::C2: return "#ff7f0e";
    case PackageCState::C3: return "#bcbd22";
    case PackageCState::C6: return "#8c564b";
    case PackageCState::C7: return "#9467bd";
    case PackageCState::C7P: return "#c5b0d5";
    case PackageCState::C8: return "#1f77b4";
    case PackageCState::C9: return "#2ca02c";
    case PackageCState::C10: return "#7f7f7f";
    }
    return "#000000";
}

std::string timelines_csv(std::span<const WindowTimeline> timelines) {
    std::string out = "window,kind,state,from,start_ns,end_ns,dram_read,dram_write,edp_bytes\n";
    for (const auto& w : timelines)
        for (const auto& iv : w.intervals) {
            const bool tr = iv.kind == IntervalKind::transition;
            out += fmt::format("{},{},{},{},{},{},{},{},{}\n", w.window_index, tr ? "transition" : "steady",
                               to_string(iv.state), tr ? to_string(iv.from) : std::string_view{},
                               (w.start + iv.start).count(), (w.start + iv.end).count(), iv.dram_read(),
                               iv.dram_write(), iv.edp_bytes);
        }
    return out;
}

namespace {

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string timelines_svg(std::span<const WindowTimeline> timelines, std::string_view title) {
    constexpr double left = 70, right = 20, top = 40, lane = 22, gap = 6, plot_w = 900;
    std::int64_t longest = 1;
    for (const auto& w : timelines) longest = std::max<std::int64_t>(longest, w.duration.count());
    const double legend_y = top + static_cast<double>(timelines.size()) * (lane + gap) + 20;
    const double height = legend_y + 40;
    const double width = left + plot_w + right;
    const double scale = plot_w / static_cast<double>(longest);

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
        "font-family=\"sans-serif\" font-size=\"11\">\n",
        width, height);
    out += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"#ffffff\"/>\n", width, height);
    if (!title.empty()) out += fmt::format("<text x=\"{}\" y=\"20\" font-size=\"14\">{}</text>\n", left, escape(title));

    for (std::size_t i = 0; i < timelines.size(); ++i) {
        const auto& w = timelines[i];
        const double y = top + static_cast<double>(i) * (lane + gap);
        out += fmt::format("<text x=\"{:.0f}\" y=\"{:.1f}\" text-anchor=\"end\">w{}</text>\n", left - 8,
                           y + lane * 0.7, w.window_index);
        for (const auto& iv : w.intervals) {
            const double x = left + static_cast<double>(iv.start.count()) * scale;
            const double wd = static_cast<double>(iv.span().count()) * scale;
            const bool tr = iv.kind == IntervalKind::transition;
            out += fmt::format(
                "<rect x=\"{:.3f}\" y=\"{:.1f}\" width=\"{:.3f}\" height=\"{:.0f}\" fill=\"{}\"{}>"
                "<title>{}{} {}-{} ns</title></rect>\n",
                x, y, wd, lane, state_color(iv.state), tr ? " fill-opacity=\"0.5\"" : "",
                tr ? fmt::format("{}->", to_string(iv.from)) : std::string{}, to_string(iv.state),
                iv.start.count(), iv.end.count());
        }
        for (const auto& ev : w.transitions) {
            const double x = left + static_cast<double>(ev.at.count()) * scale;
            out += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.1f}\" x2=\"{:.3f}\" y2=\"{:.1f}\" stroke=\"#000000\" "
                               "stroke-width=\"0.5\"/>\n",
                               x, y, x, y + lane);
        }
    }

    double x = left;
    for (auto s : kAllStates) {
        out += fmt::format("<rect x=\"{:.0f}\" y=\"{:.0f}\" width=\"12\" height=\"12\" fill=\"{}\"/>", x, legend_y,
                           state_color(s));
        out += fmt::format("<text x=\"{:.0f}\" y=\"{:.0f}\">{}</text>\n", x + 16, legend_y + 10, to_string(s));
        x += 60;
    }
    out += "</svg>\n";
    return out;
}

} // namespace burstlink::timeline
