#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roofline {

/// Floating-point precision class of a FLOP count or compute ceiling.
/// TENSOR counts are carried through the pipeline but are only produced by
/// adapters that have an instruction->FLOP coefficient configured.
enum class Precision { FP64, FP32, FP16, TENSOR };

std::string_view to_string(Precision p);

/// Parses "FP64"/"fp64"/... ; throws ConfigError on anything else.
Precision precision_from_string(std::string_view text);

/// One level of a memory hierarchy. rank 0 is closest to the compute units.
struct MemoryLevel {
    std::string name;
    int rank = 0;

    friend bool operator==(const MemoryLevel&, const MemoryLevel&) = default;
};

/// Canonical near-to-far ordering weight for well-known level names (L1 <
/// L2 < L3 < MCDRAM/HBM < DDR/DRAM/MEM). Unknown names sort last. Used when
/// no explicit hierarchy is available (e.g. ordering the levels of a bare
/// measurement summary).
int canonical_level_rank(std::string_view name);

enum class CeilingKind { Compute, Bandwidth };

/// A single roofline ceiling: either peak GFLOP/s for one precision or peak
/// GB/s for one memory level.
struct Ceiling {
    CeilingKind kind = CeilingKind::Compute;
    std::string label;
    double value = 0.0;                 // GFLOP/s (compute) or GB/s (bandwidth)
    Precision precision = Precision::FP64;  // compute ceilings only
    std::string level;                       // bandwidth ceilings only
};

/// Ceilings plus hierarchy for one machine. Immutable after construction;
/// all model operations take it by const reference.
struct MachineModel {
    std::string name;
    std::vector<Ceiling> ceilings;
    std::vector<MemoryLevel> hierarchy;  // ordered by rank, 0 = nearest

    const Ceiling* find_compute(Precision p) const;
    const Ceiling* find_bandwidth(std::string_view level) const;
    /// Highest compute ceiling across precisions; throws MissingCeilingError
    /// if the model has none.
    double max_compute_gflops() const;

    /// Throws ConfigError unless: at least one compute and one bandwidth
    /// ceiling, all values > 0, ranks unique and contiguous from 0, and
    /// every bandwidth level present in the hierarchy.
    void validate() const;
};

/// Canonical measurement produced by every ingest adapter and by the cache
/// simulator: elapsed time, FLOPs per precision, bytes moved per memory
/// level. `seconds` is absent when the source tool did not report time (the
/// SDE/VTune path); samples built from such a summary carry AI only.
struct MeasurementSummary {
    std::string label;
    std::optional<double> seconds;
    std::map<Precision, double> flops;
    std::map<std::string, double> bytes;      // level name -> bytes moved
    std::map<std::string, double> metadata;   // pass-through metrics (not FLOPs/bytes)
    std::vector<std::string> warnings;

    /// Hard invariants: finite values, counts >= 0, seconds > 0 when
    /// present. Throws MalformedInputError. Completeness (at least one FLOP
    /// and one byte entry, required for plotting) is reported separately so
    /// partial tool output can flow through with warnings attached.
    void validate() const;
    bool is_complete() const { return !flops.empty() && !bytes.empty(); }
};

/// One plotted roofline point. `precision` is empty for a combined
/// all-precisions series; `gflops` is empty when the summary had no time
/// basis.
struct RooflineSample {
    std::string label;
    MemoryLevel level;
    std::optional<Precision> precision;
    double ai = 0.0;  // FLOPs/byte
    std::optional<double> gflops;
};

enum class BoundTag { MemoryBound, ComputeBound };

/// Classification of a sample against a machine: which leg of the roofline
/// bounds it, and how much headroom (attainable/achieved) remains. Headroom
/// is absent for AI-only samples.
struct BoundClass {
    BoundTag tag = BoundTag::MemoryBound;
    std::string level;  // bounding level for MemoryBound
    std::optional<double> headroom;
};

}  // namespace roofline
