#include "roofline/ingest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "roofline/errors.hpp"

namespace roofline::ingest {

namespace {

constexpr double kGiga = 1e9;

const std::set<std::string, std::less<>> kKnownLevels = {"L1",  "L2",  "L3",    "L4",
                                                         "HBM", "DDR", "MCDRAM", "DRAM"};

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_number(const std::string& token, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(token, &pos);
        if (pos == 0) throw std::invalid_argument("empty");
        if (!std::isfinite(v))
            throw MalformedInputError(context + ": value '" + token + "' is not finite");
        return v;
    } catch (const std::invalid_argument&) {
        throw MalformedInputError(context + ": cannot parse number from '" + token + "'");
    } catch (const std::out_of_range&) {
        throw MalformedInputError(context + ": number out of range in '" + token + "'");
    }
}

// "Key: value [unit]" lines. Returns pairs in file order; '#' comments and
// blank lines skipped. The value side is kept as raw text so non-numeric
// keys (Label) work.
std::vector<std::pair<std::string, std::string>> parse_keyvalue(const std::string& text,
                                                                const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw MalformedInputError(source + " line " + std::to_string(lineno) +
                                      ": expected 'Key: value', got '" + t + "'");
        out.emplace_back(trim(t.substr(0, colon)), trim(t.substr(colon + 1)));
    }
    return out;
}

// Numeric key:value map with the duplicate rule: repeated keys with equal
// values collapse, conflicting values are an error.
struct KvDoc {
    std::map<std::string, double> values;
    std::optional<std::string> label;
};

KvDoc to_numeric_kv(const std::vector<std::pair<std::string, std::string>>& pairs,
                    const std::string& source) {
    KvDoc doc;
    for (const auto& [key, raw] : pairs) {
        if (key == "Label" || key == "Region" || key == "Kernel") {
            doc.label = raw;
            continue;
        }
        double v = parse_number(raw, source + " key '" + key + "'");
        auto [it, inserted] = doc.values.emplace(key, v);
        if (!inserted && it->second != v)
            throw MalformedInputError(source + ": conflicting duplicate key '" + key + "' (" +
                                      std::to_string(it->second) + " vs " + std::to_string(v) +
                                      ")");
    }
    return doc;
}

// "<LEVEL> Bytes" -> level name, or nullopt.
std::optional<std::string> byte_level_key(const std::string& key) {
    constexpr std::string_view suffix = " Bytes";
    if (key.size() <= suffix.size() || !key.ends_with(suffix)) return std::nullopt;
    return key.substr(0, key.size() - suffix.size());
}

void collect_byte_levels(const KvDoc& doc, MeasurementSummary& summary,
                         std::set<std::string>& consumed) {
    for (const auto& [key, value] : doc.values) {
        auto level = byte_level_key(key);
        if (!level) continue;
        consumed.insert(key);
        summary.bytes[*level] = value * kGiga;
        if (!kKnownLevels.contains(*level))
            summary.warnings.push_back("unknown memory level '" + *level +
                                       "', preserved verbatim");
    }
}

void warn_unconsumed(const KvDoc& doc, const std::set<std::string>& consumed,
                     MeasurementSummary& summary) {
    for (const auto& [key, _] : doc.values)
        if (!consumed.contains(key))
            summary.warnings.push_back("unknown key '" + key + "' ignored");
}

// Metric records to a name->value map, rejecting negatives and conflicting
// duplicates.
std::map<std::string, double> to_metric_map(const std::vector<MetricRecord>& records,
                                            const std::string& source) {
    if (records.empty()) throw MalformedInputError(source + ": no metric records");
    std::map<std::string, double> out;
    for (const MetricRecord& r : records) {
        if (r.name.empty()) throw MalformedInputError(source + ": metric with empty name");
        if (!std::isfinite(r.value))
            throw MalformedInputError(source + ": metric '" + r.name + "' is not finite");
        if (r.value < 0.0)
            throw MalformedInputError(source + ": metric '" + r.name + "' is negative (" +
                                      std::to_string(r.value) + ")");
        auto [it, inserted] = out.emplace(r.name, r.value);
        if (!inserted && it->second != r.value)
            throw MalformedInputError(source + ": conflicting duplicate metric '" + r.name + "'");
    }
    return out;
}

struct MetricReader {
    const std::map<std::string, double>& metrics;
    std::set<std::string> consumed;

    std::optional<double> take(const std::string& name) {
        auto it = metrics.find(name);
        if (it == metrics.end()) return std::nullopt;
        consumed.insert(name);
        return it->second;
    }

    void warn_rest(MeasurementSummary& summary) {
        for (const auto& [name, _] : metrics)
            if (!consumed.contains(name))
                summary.warnings.push_back("unknown metric '" + name + "' ignored");
    }
};

// add + mul + 2*fma; the precision is only reported if at least one of its
// metrics was collected.
void fold_flops(MetricReader& reader, MeasurementSummary& summary, Precision precision,
                const std::string& add, const std::string& mul, const std::string& fma) {
    auto a = reader.take(add), m = reader.take(mul), f = reader.take(fma);
    if (!a && !m && !f) return;
    summary.flops[precision] = a.value_or(0.0) + m.value_or(0.0) + 2.0 * f.value_or(0.0);
}

constexpr std::string_view kSassPrefix = "sm__sass_thread_inst_executed_op_";

std::string sass_metric(char prec, const char* op) {
    return std::string(kSassPrefix) + prec + op + "_pred_on.sum";
}

// Shared between the two Nsight adapters: Table II and Table III carry the
// same time and FLOP rows verbatim.
void map_ncu_time_and_flops(MetricReader& reader, MeasurementSummary& summary,
                            const CoefficientTable& coeffs, const std::string& source) {
    auto cycles = reader.take("sm__cycles_elapsed.avg");
    auto rate = reader.take("sm__cycles_elapsed.avg.per_second");
    if (!cycles || !rate) {
        std::string missing = !cycles ? "sm__cycles_elapsed.avg" : "sm__cycles_elapsed.avg.per_second";
        throw MissingTimeBasisError(source + ": missing time metric '" + missing + "'");
    }
    if (*rate == 0.0) throw MalformedInputError(source + ": cycle rate metric is zero");
    summary.seconds = *cycles / *rate;

    fold_flops(reader, summary, Precision::FP64, sass_metric('d', "add"), sass_metric('d', "mul"),
               sass_metric('d', "fma"));
    fold_flops(reader, summary, Precision::FP32, sass_metric('f', "add"), sass_metric('f', "mul"),
               sass_metric('f', "fma"));
    fold_flops(reader, summary, Precision::FP16, sass_metric('h', "add"), sass_metric('h', "mul"),
               sass_metric('h', "fma"));
    if (auto tensor = reader.take("sm__inst_executed_pipe_tensor.sum"))
        summary.flops[Precision::TENSOR] =
            *tensor * coeffs.lookup("sm__inst_executed_pipe_tensor.sum", "tensor_flops_per_inst");
}

void finish_summary(MeasurementSummary& summary, const std::string& source) {
    if (summary.flops.empty() && summary.bytes.empty())
        throw MalformedInputError(source + ": no recognized FLOP or byte metrics");
    if (summary.flops.empty())
        summary.warnings.push_back("no FLOP metrics present; AI cannot be formed");
    if (summary.bytes.empty())
        summary.warnings.push_back("no byte-level metrics present; summary has no memory levels");
    summary.validate();
}

}  // namespace

std::string_view to_string(AdapterId id) {
    switch (id) {
        case AdapterId::Likwid: return "likwid";
        case AdapterId::SdeVtune: return "sde_vtune";
        case AdapterId::Nvprof: return "nvprof";
        case AdapterId::Ncu2019: return "ncu2019";
        case AdapterId::Ncu2020: return "ncu2020";
    }
    return "likwid";
}

AdapterId adapter_from_string(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "likwid") return AdapterId::Likwid;
    if (lower == "sde_vtune" || lower == "sde-vtune" || lower == "sde") return AdapterId::SdeVtune;
    if (lower == "nvprof") return AdapterId::Nvprof;
    if (lower == "ncu2019" || lower == "ncu-2019") return AdapterId::Ncu2019;
    if (lower == "ncu2020" || lower == "ncu-2020") return AdapterId::Ncu2020;
    throw ConfigError("unknown adapter '" + std::string(text) +
                      "' (expected likwid, sde_vtune, nvprof, ncu2019 or ncu2020)");
}

CoefficientTable CoefficientTable::defaults() {
    CoefficientTable t;
    t.classes_ = {
        {"sector_bytes", 32.0},
        {"transaction_bytes", 32.0},
        {"shared_transaction_bytes", 128.0},
        {"shared_wavefront_bytes", 128.0},
        {"tensor_flops_per_inst", 512.0},
    };
    return t;
}

double CoefficientTable::lookup(std::string_view metric, std::string_view cls) const {
    if (auto it = metrics_.find(std::string(metric)); it != metrics_.end()) return it->second;
    auto it = classes_.find(std::string(cls));
    if (it == classes_.end())
        throw ConfigError("unknown coefficient class '" + std::string(cls) + "'");
    return it->second;
}

void CoefficientTable::set(const std::string& key, double multiplier) {
    if (!(multiplier > 0.0) || !std::isfinite(multiplier))
        throw ConfigError("coefficient '" + key + "' must be positive and finite");
    if (classes_.contains(key))
        classes_[key] = multiplier;
    else
        metrics_[key] = multiplier;
}

std::vector<MetricRecord> parse_metric_csv(const std::string& text) {
    std::vector<MetricRecord> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto comma = t.find(',', start);
            fields.push_back(trim(t.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() < 2)
            throw MalformedInputError("metric CSV line " + std::to_string(lineno) +
                                      ": expected 'metric,value'");
        // Tolerate a header row up front.
        if (lineno == 1 && (fields[0] == "metric" || fields[0] == "name")) continue;
        MetricRecord r;
        r.name = fields[0];
        r.value = parse_number(fields[1], "metric CSV line " + std::to_string(lineno));
        if (fields.size() > 2 && !fields[2].empty()) r.unit = fields[2];
        out.push_back(std::move(r));
    }
    return out;
}

MeasurementSummary parse_likwid(const std::string& text) {
    auto pairs = parse_keyvalue(text, "likwid input");
    KvDoc doc = to_numeric_kv(pairs, "likwid input");

    MeasurementSummary summary;
    summary.label = doc.label.value_or("likwid");
    std::set<std::string> consumed;

    auto time_it = doc.values.find("Time");
    if (time_it == doc.values.end())
        throw MalformedInputError("likwid input: missing required key 'Time'");
    auto gflops_it = doc.values.find("GFLOPS");
    if (gflops_it == doc.values.end())
        throw MalformedInputError("likwid input: missing required key 'GFLOPS'");
    consumed.insert("Time");
    consumed.insert("GFLOPS");

    summary.seconds = time_it->second;
    // LIKWID's FLOPS_DP group; the GFLOPS line is a total count in
    // giga-operations, not a rate.
    summary.flops[Precision::FP64] = gflops_it->second * kGiga;

    collect_byte_levels(doc, summary, consumed);
    warn_unconsumed(doc, consumed, summary);
    finish_summary(summary, "likwid input");
    return summary;
}

MeasurementSummary parse_sde_vtune(const std::string& sde_text,
                                   const std::optional<std::string>& vtune_text) {
    if (trim(sde_text).empty()) throw MalformedInputError("SDE input is empty");
    if (vtune_text && trim(*vtune_text).empty())
        throw MalformedInputError("VTune input is empty");

    KvDoc doc = to_numeric_kv(parse_keyvalue(sde_text, "SDE input"), "SDE input");
    std::optional<std::string> label = doc.label;
    if (vtune_text) {
        KvDoc vdoc = to_numeric_kv(parse_keyvalue(*vtune_text, "VTune input"), "VTune input");
        for (const auto& [key, value] : vdoc.values) {
            auto [it, inserted] = doc.values.emplace(key, value);
            if (!inserted && it->second != value)
                throw MalformedInputError("SDE/VTune inputs: conflicting duplicate key '" + key +
                                          "'");
        }
        if (!label) label = vdoc.label;
    }

    MeasurementSummary summary;
    summary.label = label.value_or("sde_vtune");
    std::set<std::string> consumed;

    auto gflops_it = doc.values.find("GFLOPS");
    if (gflops_it == doc.values.end())
        throw MalformedInputError("SDE input: missing required key 'GFLOPS'");
    consumed.insert("GFLOPS");
    summary.flops[Precision::FP64] = gflops_it->second * kGiga;

    if (auto it = doc.values.find("Time"); it != doc.values.end()) {
        summary.seconds = it->second;
        consumed.insert("Time");
    }

    collect_byte_levels(doc, summary, consumed);
    warn_unconsumed(doc, consumed, summary);

    if (!summary.bytes.contains("L1"))
        summary.warnings.push_back("SDE input supplied no L1 bytes");
    if (!vtune_text && !summary.bytes.contains("DDR") && !summary.bytes.contains("MCDRAM"))
        summary.warnings.push_back("no VTune input: DDR/MCDRAM traffic missing");
    else if (vtune_text && (!summary.bytes.contains("DDR") || !summary.bytes.contains("MCDRAM")))
        summary.warnings.push_back("VTune input missing DDR or MCDRAM bytes");

    finish_summary(summary, "SDE/VTune input");
    return summary;
}

MeasurementSummary map_nvprof(const std::vector<MetricRecord>& records,
                              std::optional<double> seconds, const CoefficientTable& coeffs) {
    auto metrics = to_metric_map(records, "nvprof input");
    MetricReader reader{metrics, {}};
    MeasurementSummary summary;
    summary.label = "nvprof";
    summary.seconds = seconds;

    if (auto v = reader.take("flop_count_dp")) summary.flops[Precision::FP64] = *v;
    if (auto v = reader.take("flop_count_sp")) summary.flops[Precision::FP32] = *v;
    if (auto v = reader.take("flop_count_hp")) summary.flops[Precision::FP16] = *v;
    // A 0-10 pipe-utilization level, not an operation count: carried as
    // metadata, never converted to FLOPs.
    if (auto v = reader.take("tensor_precision_fu_utilization"))
        summary.metadata["tensor_precision_fu_utilization"] = *v;

    auto add_bytes = [&](const std::string& level, std::initializer_list<const char*> names,
                         const char* cls) {
        bool any = false;
        double total = summary.bytes.count(level) ? summary.bytes[level] : 0.0;
        for (const char* name : names) {
            if (auto v = reader.take(name)) {
                total += *v * coeffs.lookup(name, cls);
                any = true;
            }
        }
        if (any) summary.bytes[level] = total;
    };

    add_bytes("L1",
              {"gld_transactions", "gst_transactions", "atomic_transactions",
               "local_load_transactions", "local_store_transactions"},
              "transaction_bytes");
    add_bytes("L1", {"shared_load_transactions", "shared_store_transactions"},
              "shared_transaction_bytes");
    add_bytes("L2", {"l2_read_transactions", "l2_write_transactions"}, "transaction_bytes");
    add_bytes("HBM", {"dram_read_transactions", "dram_write_transactions"}, "transaction_bytes");

    reader.warn_rest(summary);
    finish_summary(summary, "nvprof input");
    return summary;
}

MeasurementSummary map_ncu2019(const std::vector<MetricRecord>& records,
                               const CoefficientTable& coeffs) {
    auto metrics = to_metric_map(records, "ncu2019 input");
    MetricReader reader{metrics, {}};
    MeasurementSummary summary;
    summary.label = "ncu2019";

    map_ncu_time_and_flops(reader, summary, coeffs, "ncu2019 input");

    auto add_bytes = [&](const std::string& level, std::initializer_list<const char*> names,
                         const char* cls) {
        bool any = false;
        double total = summary.bytes.count(level) ? summary.bytes[level] : 0.0;
        for (const char* name : names) {
            if (auto v = reader.take(name)) {
                total += *v * (cls ? coeffs.lookup(name, cls) : 1.0);
                any = true;
            }
        }
        if (any) summary.bytes[level] = total;
    };

    // L1: sector and set-access counters scale by the sector size, the
    // byte-valued store metric is verbatim, shared wavefronts use their own
    // width.
    add_bytes("L1",
              {"l1tex__t_sectors_pipe_lsu_mem_global_op_ld.sum",
               "l1tex__t_set_accesses_pipe_lsu_mem_global_op_atom.sum",
               "l1tex__t_set_accesses_pipe_lsu_mem_global_op_red.sum",
               "l1tex__t_set_accesses_pipe_tex_mem_surface_op_atom.sum",
               "l1tex__t_set_accesses_pipe_tex_mem_surface_op_red.sum",
               "l1tex__t_sectors_pipe_lsu_mem_local_op_ld.sum",
               "l1tex__t_sectors_pipe_lsu_mem_local_op_st.sum"},
              "sector_bytes");
    add_bytes("L1", {"l1tex__t_bytes_pipe_lsu_mem_global_op_st.sum"}, nullptr);
    add_bytes("L1",
              {"l1tex__data_pipe_lsu_wavefronts_mem_shared_op_ld.sum",
               "l1tex__data_pipe_lsu_wavefronts_mem_shared_op_st.sum"},
              "shared_wavefront_bytes");
    add_bytes("L2",
              {"lts__t_sectors_op_read.sum", "lts__t_sectors_op_write.sum",
               "lts__t_sectors_op_atom.sum", "lts__t_sectors_op_red.sum"},
              "sector_bytes");
    add_bytes("HBM", {"dram__sectors_read.sum", "dram__sectors_write.sum"}, "sector_bytes");

    reader.warn_rest(summary);
    finish_summary(summary, "ncu2019 input");
    return summary;
}

MeasurementSummary map_ncu2020(const std::vector<MetricRecord>& records,
                               const CoefficientTable& coeffs) {
    auto metrics = to_metric_map(records, "ncu2020 input");
    MetricReader reader{metrics, {}};
    MeasurementSummary summary;
    summary.label = "ncu2020";

    map_ncu_time_and_flops(reader, summary, coeffs, "ncu2020 input");

    if (auto v = reader.take("l1tex__t_bytes.sum")) summary.bytes["L1"] = *v;
    if (auto v = reader.take("lts__t_bytes.sum")) summary.bytes["L2"] = *v;
    if (auto v = reader.take("dram__bytes.sum")) summary.bytes["HBM"] = *v;

    reader.warn_rest(summary);
    finish_summary(summary, "ncu2020 input");
    return summary;
}

AdapterId detect_adapter(const std::string& text) {
    auto has = [&](std::string_view needle) { return text.find(needle) != std::string::npos; };

    if (has("dram__bytes.sum") || has("lts__t_bytes.sum") || has("l1tex__t_bytes.sum"))
        return AdapterId::Ncu2020;
    if (has("dram__sectors_read") || has("lts__t_sectors_op") || has("l1tex__t_sectors_pipe") ||
        has("l1tex__data_pipe_lsu_wavefronts") || has(kSassPrefix) || has("sm__cycles_elapsed"))
        return AdapterId::Ncu2019;
    if (has("dram_read_transactions") || has("gld_transactions") || has("flop_count_dp") ||
        has("flop_count_sp") || has("l2_read_transactions"))
        return AdapterId::Nvprof;
    if (has("GFLOPS") && has("Time")) return AdapterId::Likwid;
    if (has("GFLOPS") || has("DDR Bytes") || has("MCDRAM Bytes")) return AdapterId::SdeVtune;

    throw UnrecognizedFormatError(
        "input matches no adapter signature; candidates are ncu2020 (dram__bytes.sum), "
        "ncu2019 (dram__sectors_read.sum), nvprof (dram_read_transactions), "
        "likwid (Time + GFLOPS lines), sde_vtune (GFLOPS or DDR/MCDRAM Bytes lines)");
}

MeasurementSummary ingest_text(AdapterId id, const std::string& text,
                               const std::optional<std::string>& secondary_text,
                               std::optional<double> seconds, const CoefficientTable& coeffs,
                               const std::optional<std::string>& label) {
    MeasurementSummary summary;
    switch (id) {
        case AdapterId::Likwid:
            summary = parse_likwid(text);
            break;
        case AdapterId::SdeVtune:
            summary = parse_sde_vtune(text, secondary_text);
            if (!summary.seconds && seconds) summary.seconds = seconds;
            break;
        case AdapterId::Nvprof:
            summary = map_nvprof(parse_metric_csv(text), seconds, coeffs);
            break;
        case AdapterId::Ncu2019:
            summary = map_ncu2019(parse_metric_csv(text), coeffs);
            break;
        case AdapterId::Ncu2020:
            summary = map_ncu2020(parse_metric_csv(text), coeffs);
            break;
    }
    if (label) summary.label = *label;
    summary.validate();
    return summary;
}

}  // namespace roofline::ingest
