#include "roofline/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "roofline/errors.hpp"

namespace roofline {

namespace {

const Ceiling& require_compute(const MachineModel& machine, Precision precision) {
    const Ceiling* c = machine.find_compute(precision);
    if (!c)
        throw MissingCeilingError("machine '" + machine.name + "' has no compute ceiling for " +
                                  std::string(to_string(precision)));
    return *c;
}

const Ceiling& require_bandwidth(const MachineModel& machine, std::string_view level) {
    const Ceiling* c = machine.find_bandwidth(level);
    if (!c)
        throw MissingCeilingError("machine '" + machine.name +
                                  "' has no bandwidth ceiling for level '" + std::string(level) +
                                  "'");
    return *c;
}

// Levels of a bare summary sorted near-to-far by canonical rank, name as
// tiebreaker so the order is total.
std::vector<std::string> ordered_levels(const MeasurementSummary& summary) {
    std::vector<std::string> levels;
    levels.reserve(summary.bytes.size());
    for (const auto& [name, _] : summary.bytes) levels.push_back(name);
    std::stable_sort(levels.begin(), levels.end(), [](const std::string& a, const std::string& b) {
        int ra = canonical_level_rank(a), rb = canonical_level_rank(b);
        return ra != rb ? ra < rb : a < b;
    });
    return levels;
}

}  // namespace

double arithmetic_intensity(double flops, double bytes, std::string_view level) {
    if (bytes == 0.0) {
        std::string where = level.empty() ? std::string("(unspecified level)")
                                          : "level '" + std::string(level) + "'";
        throw DivisionByZeroError("arithmetic intensity undefined: zero bytes moved at " + where);
    }
    return flops / bytes;
}

double attainable_performance(const MachineModel& machine, double ai, Precision precision,
                              std::string_view level) {
    const Ceiling& peak = require_compute(machine, precision);
    const Ceiling& bw = require_bandwidth(machine, level);
    return std::min(peak.value, bw.value * ai);
}

double ridge_point(const MachineModel& machine, Precision precision, std::string_view level) {
    const Ceiling& peak = require_compute(machine, precision);
    const Ceiling& bw = require_bandwidth(machine, level);
    return peak.value / bw.value;
}

SampleBuildResult build_samples(const MeasurementSummary& summary,
                                const SampleBuildOptions& options) {
    summary.validate();
    SampleBuildResult result;

    std::vector<std::string> levels = ordered_levels(summary);
    std::erase_if(levels, [&](const std::string& level) {
        if (summary.bytes.at(level) != 0.0) return false;
        result.warnings.push_back("summary '" + summary.label + "': level '" + level +
                                  "' moved zero bytes, skipped (AI undefined)");
        return true;
    });

    struct Series {
        std::optional<Precision> precision;
        double flops;
    };
    std::vector<Series> series;
    static constexpr std::array precision_order = {Precision::FP64, Precision::FP32,
                                                   Precision::FP16, Precision::TENSOR};
    double total_flops = 0.0;
    for (Precision p : precision_order) {
        auto it = summary.flops.find(p);
        if (it == summary.flops.end()) continue;
        total_flops += it->second;
        if (it->second > 0.0)
            series.push_back({p, it->second});
        else
            result.warnings.push_back("summary '" + summary.label + "': zero " +
                                      std::string(to_string(p)) + " FLOPs, series skipped");
    }
    if (options.combined_series && total_flops > 0.0 && series.size() > 1)
        series.push_back({std::nullopt, total_flops});

    if (series.empty()) {
        result.warnings.push_back("summary '" + summary.label +
                                  "': no nonzero FLOP counts, nothing to plot");
        return result;
    }

    for (const Series& s : series) {
        std::optional<double> gflops;
        if (summary.seconds) gflops = s.flops / *summary.seconds / 1e9;
        int rank = 0;
        for (const std::string& level : levels) {
            double bytes = summary.bytes.at(level);
            RooflineSample sample;
            sample.label = summary.label;
            sample.level = MemoryLevel{level, rank};
            sample.precision = s.precision;
            sample.ai = arithmetic_intensity(s.flops, bytes, level);
            sample.gflops = gflops;
            result.samples.push_back(std::move(sample));
            ++rank;
        }
    }
    if (!summary.seconds)
        result.warnings.push_back("summary '" + summary.label +
                                  "': no time basis, samples carry AI only");
    return result;
}

BoundClass classify_bound(const MachineModel& machine, const RooflineSample& sample) {
    // A combined-precision sample is judged against the machine's highest
    // compute ceiling.
    double peak = sample.precision ? require_compute(machine, *sample.precision).value
                                   : machine.max_compute_gflops();
    const Ceiling& bw = require_bandwidth(machine, sample.level.name);
    double ridge = peak / bw.value;

    BoundClass out;
    if (sample.ai >= ridge) {
        out.tag = BoundTag::ComputeBound;
    } else {
        out.tag = BoundTag::MemoryBound;
        out.level = sample.level.name;
    }
    if (sample.gflops) {
        double attainable = std::min(peak, bw.value * sample.ai);
        out.headroom = attainable / *sample.gflops;
    }
    return out;
}

std::vector<std::string> locality_check(const MeasurementSummary& summary, double factor) {
    std::vector<std::string> warnings;
    std::vector<std::string> levels = ordered_levels(summary);
    // Only levels with a recognized position can participate in the
    // near/far comparison.
    std::erase_if(levels, [](const std::string& l) { return canonical_level_rank(l) >= 100; });
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        double nearer = summary.bytes.at(levels[i]);
        double farther = summary.bytes.at(levels[i + 1]);
        if (farther > factor * nearer) {
            warnings.push_back("summary '" + summary.label + "': bytes at '" + levels[i + 1] +
                               "' (" + std::to_string(farther) + ") exceed " +
                               std::to_string(factor) + "x bytes at '" + levels[i] + "' (" +
                               std::to_string(nearer) + "); check locality or coefficients");
        }
    }
    return warnings;
}

}  // namespace roofline
