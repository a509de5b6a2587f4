#include "roofline/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "roofline/errors.hpp"
#include "roofline/model.hpp"

namespace roofline::report {

namespace {

constexpr double kWidth = 860, kHeight = 640;
constexpr double kMarginLeft = 72, kMarginRight = 28, kMarginTop = 44, kMarginBottom = 56;
constexpr double kPlotW = kWidth - kMarginLeft - kMarginRight;
constexpr double kPlotH = kHeight - kMarginTop - kMarginBottom;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

struct Transform {
    double x0, x1, y0, y1;  // data ranges, log10
    double px(double ai) const {
        return kMarginLeft + (std::log10(ai) - x0) / (x1 - x0) * kPlotW;
    }
    double py(double gflops) const {
        return kMarginTop + kPlotH - (std::log10(gflops) - y0) / (y1 - y0) * kPlotH;
    }
};

struct Ranges {
    double x_min, x_max, y_min, y_max;
};

Ranges auto_ranges(const ChartSpec& spec) {
    const double inf = std::numeric_limits<double>::infinity();
    double ai_lo = inf, ai_hi = -inf, g_lo = inf, g_hi = -inf;
    for (const RooflineSample& s : spec.samples) {
        if (!s.gflops) continue;
        ai_lo = std::min(ai_lo, s.ai);
        ai_hi = std::max(ai_hi, s.ai);
        g_lo = std::min(g_lo, *s.gflops);
        g_hi = std::max(g_hi, *s.gflops);
    }

    std::vector<const Ceiling*> compute, bandwidth;
    for (const Ceiling& c : spec.machine.ceilings)
        (c.kind == CeilingKind::Compute ? compute : bandwidth).push_back(&c);

    // No plottable samples: frame the ridge points instead.
    if (ai_lo > ai_hi) {
        for (const Ceiling* p : compute)
            for (const Ceiling* b : bandwidth) {
                ai_lo = std::min(ai_lo, p->value / b->value);
                ai_hi = std::max(ai_hi, p->value / b->value);
            }
        if (ai_lo > ai_hi) {  // only one ceiling kind present
            ai_lo = 0.1;
            ai_hi = 100.0;
        }
    }

    Ranges r;
    r.x_min = spec.x_min.value_or(ai_lo / 4.0);
    r.x_max = spec.x_max.value_or(ai_hi * 4.0);

    double y_lo = g_lo, y_hi = g_hi;
    for (const Ceiling* b : bandwidth) y_lo = std::min(y_lo, b->value * r.x_min);
    for (const Ceiling* p : compute) y_hi = std::max(y_hi, p->value);
    if (y_lo > y_hi) {  // still nothing: degenerate but non-empty spec
        y_lo = 1.0;
        y_hi = 10.0;
    }
    r.y_min = spec.y_min.value_or(y_lo / 4.0);
    r.y_max = spec.y_max.value_or(y_hi * 2.0);

    if (!(r.x_min > 0) || !(r.y_min > 0) || !(r.x_max > r.x_min) || !(r.y_max > r.y_min))
        throw ReportError("chart axis ranges must be positive with min < max");
    return r;
}

std::string marker_element(const LevelStyle& style, double cx, double cy,
                           const std::string& classes, const std::string& data_attrs) {
    const double r = 5.0;
    std::string shape;
    switch (style.marker) {
        case MarkerShape::Circle:
            shape = "<circle class=\"" + classes + "\" cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
                    "\" r=\"" + fmt(r, "%.1f") + "\" fill=\"" + style.color + "\"" + data_attrs +
                    "/>";
            break;
        case MarkerShape::Square:
            shape = "<rect class=\"" + classes + "\" x=\"" + fmt(cx - r) + "\" y=\"" +
                    fmt(cy - r) + "\" width=\"" + fmt(2 * r, "%.1f") + "\" height=\"" +
                    fmt(2 * r, "%.1f") + "\" fill=\"" + style.color + "\"" + data_attrs + "/>";
            break;
        case MarkerShape::Diamond:
            shape = "<polygon class=\"" + classes + "\" points=\"" + fmt(cx) + "," + fmt(cy - r) +
                    " " + fmt(cx + r) + "," + fmt(cy) + " " + fmt(cx) + "," + fmt(cy + r) + " " +
                    fmt(cx - r) + "," + fmt(cy) + "\" fill=\"" + style.color + "\"" + data_attrs +
                    "/>";
            break;
        case MarkerShape::Triangle:
            shape = "<polygon class=\"" + classes + "\" points=\"" + fmt(cx) + "," + fmt(cy - r) +
                    " " + fmt(cx + r) + "," + fmt(cy + r) + " " + fmt(cx - r) + "," + fmt(cy + r) +
                    "\" fill=\"" + style.color + "\"" + data_attrs + "/>";
            break;
    }
    return shape;
}

}  // namespace

std::string render_chart(const ChartSpec& spec) {
    bool has_ceilings = !spec.machine.ceilings.empty();
    if (!has_ceilings && spec.samples.empty())
        throw ReportError("chart spec has no ceilings and no samples; nothing to draw");

    Ranges ranges = auto_ranges(spec);
    Transform tf{std::log10(ranges.x_min), std::log10(ranges.x_max), std::log10(ranges.y_min),
                 std::log10(ranges.y_max)};

    // Ceilings in a fixed order: bandwidth by descending value, compute by
    // descending value, labels as tiebreakers.
    std::vector<const Ceiling*> compute, bandwidth;
    for (const Ceiling& c : spec.machine.ceilings)
        (c.kind == CeilingKind::Compute ? compute : bandwidth).push_back(&c);
    auto by_value = [](const Ceiling* a, const Ceiling* b) {
        return a->value != b->value ? a->value > b->value : a->label < b->label;
    };
    std::sort(bandwidth.begin(), bandwidth.end(), by_value);
    std::sort(compute.begin(), compute.end(), by_value);

    double peak_cap = compute.empty() ? ranges.y_max : compute.front()->value;
    double bw_max = bandwidth.empty() ? 0.0 : bandwidth.front()->value;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           fmt(kWidth, "%.0f") + "\" height=\"" + fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " +
           fmt(kWidth, "%.0f") + " " + fmt(kHeight, "%.0f") + "\">\n";
    svg += "<title>" + xml_escape(spec.title.empty() ? "Roofline" : spec.title) + "</title>\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth, "%.0f") + "\" height=\"" +
           fmt(kHeight, "%.0f") + "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"26\" text-anchor=\"middle\" " +
           "font-family=\"sans-serif\" font-size=\"16\">" +
           xml_escape(spec.title.empty() ? "Roofline" : spec.title) + "</text>\n";

    // Decade gridlines and tick labels.
    svg += "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\""
           " font-size=\"11\" fill=\"#444444\">\n";
    for (int k = static_cast<int>(std::ceil(tf.x0)); k <= static_cast<int>(std::floor(tf.x1));
         ++k) {
        double x = tf.px(std::pow(10.0, k));
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(kMarginTop + kPlotH) + "\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kMarginTop + kPlotH + 16) +
               "\" text-anchor=\"middle\" stroke=\"none\">" + fmt(std::pow(10.0, k), "%g") +
               "</text>\n";
    }
    for (int k = static_cast<int>(std::ceil(tf.y0)); k <= static_cast<int>(std::floor(tf.y1));
         ++k) {
        double y = tf.py(std::pow(10.0, k));
        svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(kMarginLeft + kPlotW) + "\" y2=\"" + fmt(y) + "\"/>\n";
        svg += "<text x=\"" + fmt(kMarginLeft - 6) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" stroke=\"none\">" + fmt(std::pow(10.0, k), "%g") +
               "</text>\n";
    }
    svg += "</g>\n";

    svg += "<rect class=\"frame\" x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kMarginTop) +
           "\" width=\"" + fmt(kPlotW) + "\" height=\"" + fmt(kPlotH) +
           "\" fill=\"none\" stroke=\"#222222\"/>\n";

    // Bandwidth ceilings: slope-1 lines from the left edge up to the
    // highest compute ceiling (or the right edge without one).
    for (const Ceiling* b : bandwidth) {
        double x_start = std::max(ranges.x_min, ranges.y_min / b->value);
        double x_end = std::min(ranges.x_max, peak_cap / b->value);
        if (x_end <= x_start) continue;
        double xs = tf.px(x_start), ys = tf.py(b->value * x_start);
        double xe = tf.px(x_end), ye = tf.py(b->value * x_end);
        svg += "<path class=\"ceiling ceiling-bandwidth\" data-level=\"" + xml_escape(b->level) +
               "\" data-gbs=\"" + fmt(b->value, "%.9g") + "\" d=\"M " + fmt(xs) + " " + fmt(ys) +
               " L " + fmt(xe) + " " + fmt(ye) + "\" stroke=\"#333333\" stroke-width=\"1.5\""
               " fill=\"none\"/>\n";
        svg += "<text x=\"" + fmt(xe - 4) + "\" y=\"" + fmt(ye - 6) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(b->label) + " " + fmt(b->value, "%.4g") + " GB/s</text>\n";
    }

    // Compute ceilings: horizontal from their ridge against the fastest
    // bandwidth (or the left edge).
    for (const Ceiling* p : compute) {
        double x_start = bw_max > 0.0 ? std::max(ranges.x_min, p->value / bw_max) : ranges.x_min;
        double x_end = ranges.x_max;
        if (x_end <= x_start) continue;
        double y = tf.py(p->value);
        svg += "<path class=\"ceiling ceiling-compute\" data-precision=\"" +
               std::string(to_string(p->precision)) + "\" data-gflops=\"" +
               fmt(p->value, "%.9g") + "\" d=\"M " + fmt(tf.px(x_start)) + " " + fmt(y) + " L " +
               fmt(tf.px(x_end)) + " " + fmt(y) + "\" stroke=\"#333333\" stroke-width=\"1.5\""
               " fill=\"none\"/>\n";
        svg += "<text x=\"" + fmt(tf.px(x_end) - 4) + "\" y=\"" + fmt(y - 6) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(p->label) + " " + fmt(p->value, "%.4g") + " GFLOP/s</text>\n";
    }

    // Samples in input order. Level styles: explicit entry, else palette
    // color by first-appearance order of the level.
    std::map<std::string, LevelStyle> styles = spec.styles;
    std::size_t palette_next = 0;
    auto style_for = [&](const std::string& level) -> LevelStyle {
        auto it = styles.find(level);
        if (it != styles.end() && !it->second.color.empty()) return it->second;
        LevelStyle style = it != styles.end() ? it->second : LevelStyle{};
        style.color = kPalette[palette_next % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++palette_next;
        styles[level] = style;
        return style;
    };

    std::vector<std::string> unplottable;
    for (const RooflineSample& s : spec.samples) {
        if (!s.gflops) {
            unplottable.push_back(s.label + "@" + s.level.name);
            continue;
        }
        LevelStyle style = style_for(s.level.name);
        double cx = tf.px(s.ai), cy = tf.py(*s.gflops);

        bool above = false;
        if (has_ceilings) {
            try {
                BoundClass bound = classify_bound(spec.machine, s);
                above = bound.headroom && *bound.headroom < 1.0 / (1.0 + kAboveRooflineTolerance);
            } catch (const MissingCeilingError&) {
                // no ceiling pair for this sample; nothing to flag against
            }
        }

        std::string classes = above ? "sample above-roofline" : "sample";
        std::string precision_name =
            s.precision ? std::string(to_string(*s.precision)) : std::string("ALL");
        std::string data = " data-ai=\"" + fmt(s.ai, "%.9g") + "\" data-gflops=\"" +
                           fmt(*s.gflops, "%.9g") + "\" data-level=\"" + xml_escape(s.level.name) +
                           "\" data-precision=\"" + precision_name + "\"";
        svg += marker_element(style, cx, cy, classes, data) + "\n";
        std::string text_label = s.label + " (" + s.level.name + ")" + (above ? " [above roofline]" : "");
        svg += "<text x=\"" + fmt(cx + 8) + "\" y=\"" + fmt(cy - 8) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(text_label) +
               "</text>\n";
    }
    if (!unplottable.empty()) {
        std::string joined;
        for (const std::string& u : unplottable) joined += (joined.empty() ? "" : ", ") + u;
        svg += "<!-- samples without throughput not plotted: " + xml_escape(joined) + " -->\n";
    }

    svg += "<text x=\"" + fmt(kMarginLeft + kPlotW / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
           "Arithmetic Intensity [FLOPs/Byte]</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt(kMarginTop + kPlotH / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " +
           fmt(kMarginTop + kPlotH / 2) + ")\">Performance [GFLOP/s]</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace roofline::report
