#include "roofline/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "roofline/errors.hpp"

namespace roofline {

std::string_view to_string(Precision p) {
    switch (p) {
        case Precision::FP64: return "FP64";
        case Precision::FP32: return "FP32";
        case Precision::FP16: return "FP16";
        case Precision::TENSOR: return "TENSOR";
    }
    return "FP64";
}

Precision precision_from_string(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "FP64") return Precision::FP64;
    if (upper == "FP32") return Precision::FP32;
    if (upper == "FP16") return Precision::FP16;
    if (upper == "TENSOR") return Precision::TENSOR;
    throw ConfigError("unknown precision '" + std::string(text) +
                      "' (expected one of FP64, FP32, FP16, TENSOR)");
}

int canonical_level_rank(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "L1") return 0;
    if (upper == "L2") return 1;
    if (upper == "L3") return 2;
    if (upper == "L4") return 3;
    if (upper == "MCDRAM" || upper == "HBM" || upper == "HBM2") return 10;
    if (upper == "DDR" || upper == "DRAM" || upper == "MEM" || upper == "MEMORY" ||
        upper == "SYS")
        return 20;
    return 100;  // unknown names sort after every known level
}

const Ceiling* MachineModel::find_compute(Precision p) const {
    for (const Ceiling& c : ceilings)
        if (c.kind == CeilingKind::Compute && c.precision == p) return &c;
    return nullptr;
}

const Ceiling* MachineModel::find_bandwidth(std::string_view level) const {
    for (const Ceiling& c : ceilings)
        if (c.kind == CeilingKind::Bandwidth && c.level == level) return &c;
    return nullptr;
}

double MachineModel::max_compute_gflops() const {
    const Ceiling* best = nullptr;
    for (const Ceiling& c : ceilings)
        if (c.kind == CeilingKind::Compute && (!best || c.value > best->value)) best = &c;
    if (!best)
        throw MissingCeilingError("machine '" + name + "' has no compute ceiling");
    return best->value;
}

void MachineModel::validate() const {
    bool has_compute = false, has_bandwidth = false;
    for (const Ceiling& c : ceilings) {
        if (!(c.value > 0.0) || !std::isfinite(c.value))
            throw ConfigError("machine '" + name + "': ceiling '" + c.label +
                              "' must have a positive finite value");
        if (c.kind == CeilingKind::Compute) has_compute = true;
        if (c.kind == CeilingKind::Bandwidth) {
            has_bandwidth = true;
            bool known = std::any_of(hierarchy.begin(), hierarchy.end(),
                                     [&](const MemoryLevel& l) { return l.name == c.level; });
            if (!known)
                throw ConfigError("machine '" + name + "': bandwidth ceiling '" + c.label +
                                  "' names level '" + c.level + "' missing from the hierarchy");
        }
    }
    if (!has_compute)
        throw ConfigError("machine '" + name + "' needs at least one compute ceiling");
    if (!has_bandwidth)
        throw ConfigError("machine '" + name + "' needs at least one bandwidth ceiling");

    std::set<int> ranks;
    std::set<std::string> names;
    for (const MemoryLevel& l : hierarchy) {
        if (!ranks.insert(l.rank).second)
            throw ConfigError("machine '" + name + "': duplicate hierarchy rank " +
                              std::to_string(l.rank));
        if (!names.insert(l.name).second)
            throw ConfigError("machine '" + name + "': duplicate hierarchy level '" + l.name +
                              "'");
    }
    for (int r = 0; r < static_cast<int>(hierarchy.size()); ++r)
        if (!ranks.contains(r))
            throw ConfigError("machine '" + name + "': hierarchy ranks must be contiguous from 0");
}

void MeasurementSummary::validate() const {
    if (seconds && !(*seconds > 0.0 && std::isfinite(*seconds)))
        throw MalformedInputError("summary '" + label + "': seconds must be positive and finite");
    for (const auto& [p, count] : flops)
        if (count < 0.0 || !std::isfinite(count))
            throw MalformedInputError("summary '" + label + "': " + std::string(to_string(p)) +
                                      " FLOP count must be finite and non-negative");
    for (const auto& [level, count] : bytes)
        if (count < 0.0 || !std::isfinite(count))
            throw MalformedInputError("summary '" + label + "': byte count for level '" + level +
                                      "' must be finite and non-negative");
}

}  // namespace roofline
