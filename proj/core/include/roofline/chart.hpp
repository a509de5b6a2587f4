#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roofline/types.hpp"

namespace roofline::report {

enum class MarkerShape { Circle, Square, Diamond, Triangle };

struct LevelStyle {
    std::string color;
    MarkerShape marker = MarkerShape::Circle;
};

/// Everything render_chart needs. Axis ranges default to auto: x spans
/// [min AI / 4, max AI * 4] over the samples (ridge points when there are
/// none), y spans [min(sample, bandwidth leg at x-min) / 4, 2 * max
/// compute peak]. Styles default to a fixed per-level palette.
struct ChartSpec {
    std::string title;
    MachineModel machine;
    std::vector<RooflineSample> samples;
    std::map<std::string, LevelStyle> styles;  // level name -> style
    std::optional<double> x_min, x_max;        // AI, FLOPs/byte
    std::optional<double> y_min, y_max;        // GFLOP/s
};

/// Tolerance factor above the roofline before a sample is flagged
/// (counter noise and coefficient misconfiguration must stay visible, so
/// flagged points are annotated, never clamped).
inline constexpr double kAboveRooflineTolerance = 0.02;

/// Renders a log-log hierarchical roofline chart as a standalone SVG 1.1
/// document. Bandwidth ceilings are slope-1 lines capped at the highest
/// compute ceiling; compute ceilings are horizontal lines; samples are
/// markers carrying data-ai/data-gflops attributes. Output is
/// deterministic byte-for-byte for a given spec: fixed element order,
/// fixed number formatting, no timestamps. Samples without throughput are
/// listed in a comment but cannot be plotted. Throws ReportError when
/// there is nothing to draw (no ceilings and no samples).
std::string render_chart(const ChartSpec& spec);

}  // namespace roofline::report
