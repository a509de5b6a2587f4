#pragma once

#include <string>
#include <vector>

#include "roofline/types.hpp"

namespace roofline::report {

/// A metric row of a profiler section definition.
struct SectionMetric {
    std::string label;
    std::string name;  // exact profiler metric name
};

/// Description of a custom Nsight-Compute-style section file: the chart
/// identifier, a display name, the precision it covers and the metrics it
/// asks the profiler to collect.
struct SectionFileSpec {
    std::string identifier;
    std::string display_name;
    Precision precision = Precision::FP64;
    std::vector<SectionMetric> metrics;
};

/// Builds the hierarchical roofline section spec for one precision:
/// identifier SpeedOfLight_Hierarchical{Double,Single,Half}RooflineChart,
/// the elapsed-cycles pair, that precision's add/mul/fma instruction
/// counters and the three per-level byte metrics. TENSOR has no
/// fixed-width FLOP counter, so it is rejected with ConfigError.
SectionFileSpec hierarchical_roofline_section(Precision precision);

/// Serializes the spec as a protocol-buffer text-format section
/// definition. Deterministic output; ConfigError on an empty metric list
/// or an identifier that is not a bare token.
std::string emit_section_file(const SectionFileSpec& spec);

}  // namespace roofline::report
