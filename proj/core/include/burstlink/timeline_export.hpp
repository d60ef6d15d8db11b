#pragma once

#include "burstlink/timeline.hpp"

#include <span>
#include <string>

namespace burstlink::timeline {

/// One row per interval:
/// window,kind,state,from,start_ns,end_ns,dram_read,dram_write,edp_bytes.
/// `from` is empty for steady intervals.
[[nodiscard]] std::string timelines_csv(std::span<const WindowTimeline> timelines);

/// Gantt chart, one lane per window, one fixed colour per state.
[[nodiscard]] std::string timelines_svg(std::span<const WindowTimeline> timelines,
                                        std::string_view title = {});

/// Fill colour used for a state in the SVG ("#rrggbb").
[[nodiscard]] std::string_view state_color(PackageCState s) noexcept;

} // namespace burstlink::timeline
