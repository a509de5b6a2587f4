#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roofline/types.hpp"

namespace roofline::machine {

enum class Provenance { Measured, Vendor, File };

std::string_view to_string(Provenance p);

/// On-disk ceilings description. JSON shape:
///   {"machine": str,
///    "compute":  [{"label","precision","gflops"}...],
///    "bandwidth": [{"label","level","gbs","rank"?}...],
///    "provenance": "measured"|"vendor"|"file"}
/// The hierarchy is inferred from the bandwidth entries ordered by
/// descending GB/s (fastest = nearest); explicit "rank" fields override.
struct CeilingsDocument {
    std::string machine;
    struct ComputeEntry {
        std::string label;
        Precision precision = Precision::FP64;
        double gflops = 0.0;
    };
    struct BandwidthEntry {
        std::string label;
        std::string level;
        std::optional<int> rank;
        double gbs = 0.0;
    };
    std::vector<ComputeEntry> compute;
    std::vector<BandwidthEntry> bandwidth;
    Provenance provenance = Provenance::File;
};

/// Parses the JSON text; schema violations raise ConfigError carrying the
/// offending JSON path.
CeilingsDocument parse_ceilings_json(const std::string& text);

std::string serialize_ceilings(const CeilingsDocument& doc);

/// Turns a document into a validated MachineModel. Two bandwidth entries
/// with equal GB/s need explicit ranks, otherwise the nearest-first order
/// would be arbitrary.
MachineModel load_ceilings(const CeilingsDocument& doc);
MachineModel load_ceilings_json(const std::string& text);

CeilingsDocument to_document(const MachineModel& model, Provenance provenance);

// --- ERT-style host characterization ---

struct BenchConfig {
    std::vector<std::uint64_t> working_set_sizes;  // bytes, ascending (bandwidth sweep)
    std::vector<int> flops_per_element_ladder;     // FMA-chain unroll depths (compute peak)
    int trials = 5;
    double min_seconds_per_point = 0.2;
    int threads = 1;

    /// Ascending sizes, trials >= 3, positive durations; ConfigError
    /// otherwise.
    void validate() const;

    /// 2 KiB .. 256 MiB sweep, {1,2,4,8,16} ladder, picking threads from
    /// ROOFLINE_BENCH_THREADS or hardware_concurrency.
    static BenchConfig defaults();
};

struct ComputePeakResult {
    double best_gflops = 0.0;
    std::vector<int> ladder;                   // as configured
    std::vector<double> trial_gflops;          // every (ladder point, trial) rate
};

/// Peak GFLOP/s from an unrolled in-register multiply-add chain across the
/// worker pool; reports the maximum sustained rate over all trials. Raises
/// BenchError when the steady clock is too coarse to time
/// min_seconds_per_point.
ComputePeakResult bench_compute_peak(const BenchConfig& config, Precision precision);

struct BandwidthPoint {
    std::uint64_t working_set = 0;  // bytes, total across threads
    double gbs = 0.0;
};

/// Streaming read-write sweep: for each working-set size, every worker
/// walks its slice (load, multiply-add, store per 8-byte element) and GB/s
/// = bytes touched / elapsed.
std::vector<BandwidthPoint> bench_bandwidth_sweep(const BenchConfig& config);

/// Clusters a bandwidth sweep into plateaus (a point starts a new plateau
/// when it falls more than the relative gap threshold, 25%, below the
/// running plateau median), names them L1..Ln/DRAM by descending
/// bandwidth, and attaches the compute peaks. provenance = measured.
CeilingsDocument fit_ceilings(const std::vector<BandwidthPoint>& sweep,
                              const std::map<Precision, double>& compute_peaks,
                              const std::string& machine_name = "host");

/// Gap threshold used by fit_ceilings.
inline constexpr double kPlateauGapThreshold = 0.25;

}  // namespace roofline::machine
