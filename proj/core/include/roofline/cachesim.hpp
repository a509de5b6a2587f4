#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "roofline/types.hpp"

namespace roofline::cachesim {

enum class AccessKind { Read, Write };

/// One memory access. The simulator splits accesses that cross a cache-line
/// boundary into per-line events before counting.
struct AccessEvent {
    std::uint64_t address = 0;
    std::uint32_t size = 0;  // 1..64 bytes
    AccessKind kind = AccessKind::Read;

    friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

using AccessTrace = std::vector<AccessEvent>;

enum class WritePolicy { WriteBackWriteAllocate };

struct CacheLevelConfig {
    std::string name;
    std::uint64_t capacity = 0;       // bytes
    std::uint32_t associativity = 0;  // ways; == capacity/line_size for fully associative
    std::uint32_t line_size = 0;      // bytes, power of two
    WritePolicy write_policy = WritePolicy::WriteBackWriteAllocate;
};

struct LevelStats {
    std::string name;
    std::uint64_t accesses = 0;  // line events presented to this level
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t writebacks = 0;
    std::uint64_t bytes_in = 0;   // fills: misses * line_size
    std::uint64_t bytes_out = 0;  // writebacks * line_size
};

struct SimOptions {
    /// Write every dirty line back through the hierarchy when the trace
    /// ends, so reported traffic covers the workload's complete data
    /// movement rather than leaving the tail resident.
    bool drain_dirty_at_end = true;
};

/// Name used for the unbounded memory behind the last configured level.
inline constexpr const char* kMemoryLevelName = "MEM";

struct SimResult {
    std::vector<LevelStats> levels;          // nearest-first, as configured
    std::uint64_t requested_bytes = 0;       // demand bytes from the trace itself
    std::uint64_t memory_fills = 0;          // line fills served by memory
    std::uint64_t memory_writebacks = 0;     // line writebacks received by memory
    std::uint64_t memory_bytes = 0;          // (fills + writebacks) * last line size

    /// Bytes entering each level, the figures a hierarchical roofline
    /// plots: the nearest level sees the demand bytes, deeper levels see
    /// fills plus writebacks from above, and kMemoryLevelName holds the
    /// traffic beyond the last configured level.
    std::map<std::string, double> roofline_bytes() const;

    /// Wraps roofline_bytes() in a canonical summary. FLOPs are not
    /// something a trace knows about, so callers attach them (workload
    /// generators do); without them the summary carries a warning.
    MeasurementSummary to_summary(const std::string& label = "simulated",
                                  std::map<Precision, double> flops = {}) const;
};

/// Trace-driven multi-level simulation: set-associative LRU levels with
/// write-back + write-allocate at every level. A miss at level k fills from
/// level k+1; beyond the last level lies unbounded memory. Traffic is
/// strictly inclusive in the accounting sense: every access presented to
/// level k+1 is either a miss or a writeback from level k.
SimResult simulate(std::span<const AccessEvent> trace,
                   const std::vector<CacheLevelConfig>& hierarchy, const SimOptions& options = {});

/// Throws ConfigError on zero sizes, non-power-of-two lines, capacity not
/// divisible by line_size * associativity, or line sizes that shrink with
/// depth.
void validate_hierarchy(const std::vector<CacheLevelConfig>& hierarchy);

/// Independent verification oracle: naive O(n^2) LRU stack-distance count
/// for one fully-associative level. An access misses iff the number of
/// distinct lines touched since the previous access to its line is >=
/// capacity_lines. Intentionally shares no machinery with simulate().
std::uint64_t stack_distance_oracle(std::span<const AccessEvent> trace,
                                    std::uint64_t capacity_lines, std::uint32_t line_size);

// --- Trace file format: one event per line, "R|W <hex-address> <size>" ---

AccessTrace parse_trace(const std::string& text);
std::string format_trace(std::span<const AccessEvent> trace);

/// Hierarchy JSON: {"levels": [{"name","capacity","associativity",
/// "line_size","write_policy"?}, ...]} ordered nearest-first.
std::vector<CacheLevelConfig> hierarchy_from_json(const std::string& text);

/// Two-level desktop-class default used by the CLI when no hierarchy file
/// is given: 32 KiB 8-way L1, 1 MiB 16-way L2, 64 B lines.
std::vector<CacheLevelConfig> default_hierarchy();

}  // namespace roofline::cachesim
