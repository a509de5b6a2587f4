#include "roofline/report.hpp"

#include <json.hpp>

#include "roofline/chart.hpp"
#include "roofline/errors.hpp"

namespace roofline::report {

using nlohmann::json;

std::string emit_report(const MachineModel& machine,
                        const std::vector<MeasurementSummary>& summaries,
                        const ReportOptions& options) {
    if (summaries.empty()) throw ReportError("report needs at least one summary");

    json doc;
    doc["schema"] = "roofline-report/1";
    doc["machine"] = machine.name;
    json entries = json::array();

    for (const MeasurementSummary& summary : summaries) {
        json entry;
        entry["label"] = summary.label;
        if (summary.seconds) entry["seconds"] = *summary.seconds;

        SampleBuildResult built = build_samples(summary, options.samples);
        json samples = json::array();
        for (const RooflineSample& s : built.samples) {
            json item;
            item["level"] = s.level.name;
            item["precision"] = s.precision ? std::string(to_string(*s.precision)) : "ALL";
            item["ai"] = s.ai;
            if (s.gflops) item["gflops"] = *s.gflops;
            try {
                BoundClass bound = classify_bound(machine, s);
                json b;
                b["class"] =
                    bound.tag == BoundTag::ComputeBound ? "compute_bound" : "memory_bound";
                if (bound.tag == BoundTag::MemoryBound) b["level"] = bound.level;
                if (bound.headroom) b["headroom"] = *bound.headroom;
                item["bound"] = std::move(b);
                // achieved > attainable * (1 + eps)  <=>  headroom < 1 / (1 + eps)
                if (bound.headroom)
                    item["above_roofline"] =
                        *bound.headroom < 1.0 / (1.0 + kAboveRooflineTolerance);
            } catch (const MissingCeilingError& e) {
                item["error"] = e.what();
            }
            samples.push_back(std::move(item));
        }
        entry["samples"] = std::move(samples);
        entry["locality_warnings"] = locality_check(summary, options.locality_factor);
        json warnings = summary.warnings;
        for (const std::string& w : built.warnings) warnings.push_back(w);
        entry["warnings"] = std::move(warnings);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

}  // namespace roofline::report
