#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roofline/types.hpp"

namespace roofline::ingest {

/// One profiler metric as exported by the tool: exact metric name, numeric
/// value, optional unit string.
struct MetricRecord {
    std::string name;
    double value = 0.0;
    std::optional<std::string> unit;
};

enum class AdapterId { Likwid, SdeVtune, Nvprof, Ncu2019, Ncu2020 };

std::string_view to_string(AdapterId id);
AdapterId adapter_from_string(std::string_view text);

/// Unit-conversion table for counter metrics. The tools report transaction,
/// sector, wavefront and instruction counts; the multipliers that turn
/// those into bytes or FLOPs are not part of the metric name, so they live
/// here, overridable per metric class or per exact metric name.
///
/// Class keys and defaults:
///   sector_bytes              32   (GPU L1/L2/HBM sectors)
///   transaction_bytes         32   (nvprof global/local/atomic transactions)
///   shared_transaction_bytes  128  (nvprof shared-memory transactions)
///   shared_wavefront_bytes    128  (l1tex shared wavefronts; assumed, see README)
///   tensor_flops_per_inst     512  (tensor-pipe instruction -> FLOPs)
class CoefficientTable {
  public:
    /// Table pre-populated with the defaults above.
    static CoefficientTable defaults();

    /// Multiplier for `metric`: an exact-name override if one was set,
    /// otherwise the class default. Throws ConfigError for unknown classes.
    double lookup(std::string_view metric, std::string_view cls) const;

    /// Override a class default (key must be one of the class keys above)
    /// or a single metric by exact name. Multipliers must be positive.
    void set(const std::string& key, double multiplier);

  private:
    std::map<std::string, double> classes_;
    std::map<std::string, double> metrics_;
};

// ---------------------------------------------------------------------------
// Normalized input forms
//
// CPU tools (LIKWID, SDE, VTune) use "Key: value [unit]" lines, UTF-8, LF:
//     Time: 10.2243 secs
//     GFLOPS: 5051.923
//     L1 Bytes: 6456.799 GB
// '#' starts a comment line; blank lines are ignored; "Label:" names the
// profiled region. GFLOPS is a total count in giga-operations and byte
// values are decimal GB, both scaled by 1e9 on ingest.
//
// GPU tools (nvprof, Nsight Compute) use "metric,value" CSV lines with an
// optional "metric,value[,unit]" header and optional third unit column.
// ---------------------------------------------------------------------------

/// Parses the GPU CSV form into records. Throws MalformedInputError on
/// unparseable lines or non-finite values.
std::vector<MetricRecord> parse_metric_csv(const std::string& text);

/// LIKWID per-group summary (FLOPS_DP + per-level byte groups) to canonical
/// summary. Requires Time and GFLOPS; level lines ("<NAME> Bytes: <v> GB")
/// become byte entries, with a warning for level names outside the known
/// hierarchy vocabulary.
MeasurementSummary parse_likwid(const std::string& text);

/// SDE (FLOP count + L1 bytes) merged with VTune (DDR/MCDRAM bytes). VTune
/// text may be absent, leaving an L1-only summary with a warning; an empty
/// string for either input is a MalformedInputError naming which. Duplicate
/// keys across the two texts must agree. Seconds are optional in both.
MeasurementSummary parse_sde_vtune(const std::string& sde_text,
                                   const std::optional<std::string>& vtune_text = std::nullopt);

/// nvprof metric records to canonical summary. Elapsed seconds are not an
/// nvprof metric, so they are supplied by the caller when known.
/// tensor_precision_fu_utilization is a 0-10 utilization level, not a
/// count: it lands in metadata and is never converted to FLOPs.
MeasurementSummary map_nvprof(const std::vector<MetricRecord>& records,
                              std::optional<double> seconds = std::nullopt,
                              const CoefficientTable& coeffs = CoefficientTable::defaults());

/// Nsight Compute 2019 metric records: seconds from the elapsed-cycles
/// pair, FLOPs = add + mul + 2*fma per precision, bytes from sector /
/// byte-valued / shared-wavefront metrics per level.
MeasurementSummary map_ncu2019(const std::vector<MetricRecord>& records,
                               const CoefficientTable& coeffs = CoefficientTable::defaults());

/// Nsight Compute 2020 metric records: same time and FLOP rules as 2019,
/// bytes verbatim from l1tex__t_bytes.sum / lts__t_bytes.sum /
/// dram__bytes.sum.
MeasurementSummary map_ncu2020(const std::vector<MetricRecord>& records,
                               const CoefficientTable& coeffs = CoefficientTable::defaults());

/// Identifies the input format by signature metric names, checked in fixed
/// priority order: ncu2020, ncu2019, nvprof, likwid, sde_vtune. Throws
/// UnrecognizedFormatError listing the candidates when nothing matches.
AdapterId detect_adapter(const std::string& text);

/// Dispatches to the adapter implied by `id`, parsing `text` in that
/// adapter's normalized form. For SdeVtune, `secondary_text` carries the
/// VTune side; `seconds` feeds adapters without their own time basis.
MeasurementSummary ingest_text(AdapterId id, const std::string& text,
                               const std::optional<std::string>& secondary_text = std::nullopt,
                               std::optional<double> seconds = std::nullopt,
                               const CoefficientTable& coeffs = CoefficientTable::defaults(),
                               const std::optional<std::string>& label = std::nullopt);

}  // namespace roofline::ingest
