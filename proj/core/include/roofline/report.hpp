#pragma once

#include <string>
#include <vector>

#include "roofline/model.hpp"
#include "roofline/types.hpp"

namespace roofline::report {

struct ReportOptions {
    SampleBuildOptions samples;
    double locality_factor = 1.0;
};

/// Versioned JSON report ("schema": "roofline-report/1"): one entry per
/// summary in input order, each carrying its samples with bound
/// classification, headroom, an above-roofline flag, locality warnings and
/// the summary's own warnings. A sample whose precision or level has no
/// ceiling gets the MissingCeiling message in place of a classification
/// rather than failing the report.
std::string emit_report(const MachineModel& machine,
                        const std::vector<MeasurementSummary>& summaries,
                        const ReportOptions& options = {});

}  // namespace roofline::report
