#pragma once

#include <string_view>
#include <vector>

#include "roofline/types.hpp"

namespace roofline {

/// FLOPs per byte. Exact floating division; bytes == 0 raises
/// DivisionByZeroError mentioning `level` so callers can report which
/// memory level had no traffic.
double arithmetic_intensity(double flops, double bytes, std::string_view level = "");

/// min(peak GFLOP/s, peak GB/s * ai) for the given precision and level.
/// Raises MissingCeilingError naming whichever ceiling is absent.
double attainable_performance(const MachineModel& machine, double ai, Precision precision,
                              std::string_view level);

/// AI at which the bandwidth and compute legs meet: peak GFLOP/s / peak GB/s.
double ridge_point(const MachineModel& machine, Precision precision, std::string_view level);

struct SampleBuildOptions {
    /// Also emit one series summing FLOPs across precisions (samples with
    /// precision unset). Off by default.
    bool combined_series = false;
};

struct SampleBuildResult {
    std::vector<RooflineSample> samples;
    std::vector<std::string> warnings;
};

/// One sample per (precision with flops > 0) x (level with bytes > 0).
/// gflops = flops / seconds / 1e9 when the summary has a time basis.
/// Levels with zero measured bytes are skipped with a warning instead of
/// producing an infinite AI.
SampleBuildResult build_samples(const MeasurementSummary& summary,
                                const SampleBuildOptions& options = {});

/// Compute-bound iff sample.ai >= ridge_point (a sample exactly at the
/// ridge classifies as compute-bound). headroom = attainable / achieved
/// when the sample carries throughput.
BoundClass classify_bound(const MachineModel& machine, const RooflineSample& sample);

/// Flags every adjacent level pair (canonical near-to-far order) where the
/// farther level moved more than `factor` times the bytes of the nearer
/// one. Warnings only: write-allocate traffic can legitimately invert the
/// ordering.
std::vector<std::string> locality_check(const MeasurementSummary& summary, double factor = 1.0);

}  // namespace roofline
