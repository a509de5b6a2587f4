#include "roofline/section.hpp"

#include <algorithm>
#include <cctype>

#include "roofline/errors.hpp"

namespace roofline::report {

namespace {

struct PrecisionNames {
    const char* chart;    // identifier fragment
    const char* display;  // human name
    char sass;            // d/f/h in the SASS counter names
};

PrecisionNames names_for(Precision precision) {
    switch (precision) {
        case Precision::FP64: return {"Double", "Double Precision", 'd'};
        case Precision::FP32: return {"Single", "Single Precision", 'f'};
        case Precision::FP16: return {"Half", "Half Precision", 'h'};
        case Precision::TENSOR: break;
    }
    throw ConfigError(
        "section files support FP64, FP32 and FP16; tensor-pipe instructions have no "
        "fixed FLOP width to chart");
}

std::string sass(char prec, const char* op) {
    return std::string("sm__sass_thread_inst_executed_op_") + prec + op + "_pred_on.sum";
}

bool valid_identifier(const std::string& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

}  // namespace

SectionFileSpec hierarchical_roofline_section(Precision precision) {
    PrecisionNames n = names_for(precision);
    SectionFileSpec spec;
    spec.identifier = std::string("SpeedOfLight_Hierarchical") + n.chart + "RooflineChart";
    spec.display_name = std::string("Speed Of Light Hierarchical Roofline Chart (") + n.display + ")";
    spec.precision = precision;
    spec.metrics = {
        {"Elapsed Cycles", "sm__cycles_elapsed.avg"},
        {"SM Frequency", "sm__cycles_elapsed.avg.per_second"},
        {std::string(to_string(precision)) + " ADD", sass(n.sass, "add")},
        {std::string(to_string(precision)) + " MUL", sass(n.sass, "mul")},
        {std::string(to_string(precision)) + " FMA", sass(n.sass, "fma")},
        {"L1 Bytes", "l1tex__t_bytes.sum"},
        {"L2 Bytes", "lts__t_bytes.sum"},
        {"HBM Bytes", "dram__bytes.sum"},
    };
    return spec;
}

std::string emit_section_file(const SectionFileSpec& spec) {
    if (spec.metrics.empty())
        throw ConfigError("section spec has an empty metric list");
    if (!valid_identifier(spec.identifier))
        throw ConfigError("section identifier '" + spec.identifier +
                          "' must be a bare [A-Za-z0-9_] token");
    PrecisionNames n = names_for(spec.precision);

    std::string flops_expr = sass(n.sass, "add") + " + " + sass(n.sass, "mul") + " + 2 * " +
                             sass(n.sass, "fma");

    std::string out;
    out += "Identifier: \"" + spec.identifier + "\"\n";
    out += "DisplayName: \"" + spec.display_name + "\"\n";
    out += "Description: \"Hierarchical roofline: " + std::string(n.display) +
           " FLOPs against L1, L2 and device memory traffic.\"\n";
    out += "Order: 100\n";
    out += "Sets {\n  Identifier: \"roofline\"\n}\n";
    out += "MetricDefinitions {\n";
    out += "  MetricDefinitions {\n";
    out += "    Name: \"roofline_" + std::string(to_string(spec.precision)) + "_flops\"\n";
    out += "    Expression: \"" + flops_expr + "\"\n";
    out += "  }\n";
    out += "}\n";
    out += "Body {\n";
    out += "  DisplayName: \"Hierarchical Roofline\"\n";
    out += "  Items {\n";
    out += "    Table {\n";
    out += "      Label: \"Roofline Data\"\n";
    out += "      Metrics {\n";
    for (const SectionMetric& m : spec.metrics) {
        out += "        Metrics {\n";
        out += "          Label: \"" + m.label + "\"\n";
        out += "          Name: \"" + m.name + "\"\n";
        out += "        }\n";
    }
    out += "      }\n";
    out += "    }\n";
    out += "  }\n";
    out += "}\n";
    return out;
}

}  // namespace roofline::report
