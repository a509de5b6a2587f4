#include "roofline/summary_json.hpp"

#include <json.hpp>

#include "roofline/errors.hpp"

namespace roofline {

using nlohmann::json;

std::string to_canonical_json(const MeasurementSummary& summary) {
    json doc;
    json bytes = json::object();
    for (const auto& [level, count] : summary.bytes) bytes[level] = count;
    json flops = json::object();
    for (const auto& [p, count] : summary.flops) flops[std::string(to_string(p))] = count;
    doc["bytes"] = std::move(bytes);
    doc["flops"] = std::move(flops);
    doc["label"] = summary.label;
    if (!summary.metadata.empty()) {
        json meta = json::object();
        for (const auto& [k, v] : summary.metadata) meta[k] = v;
        doc["metadata"] = std::move(meta);
    }
    if (summary.seconds) doc["seconds"] = *summary.seconds;
    doc["warnings"] = summary.warnings;
    return doc.dump(2) + "\n";
}

MeasurementSummary summary_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInputError(std::string("summary JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MalformedInputError("summary JSON: top-level value must be an object");

    MeasurementSummary out;
    try {
        out.label = doc.at("label").get<std::string>();
        for (const auto& [key, value] : doc.at("flops").items())
            out.flops[precision_from_string(key)] = value.get<double>();
        for (const auto& [key, value] : doc.at("bytes").items())
            out.bytes[key] = value.get<double>();
        if (doc.contains("seconds") && !doc["seconds"].is_null())
            out.seconds = doc["seconds"].get<double>();
        if (doc.contains("metadata"))
            for (const auto& [key, value] : doc["metadata"].items())
                out.metadata[key] = value.get<double>();
        if (doc.contains("warnings"))
            out.warnings = doc["warnings"].get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw MalformedInputError(std::string("summary JSON: ") + e.what());
    } catch (const ConfigError& e) {
        throw MalformedInputError(std::string("summary JSON: ") + e.what());
    }
    out.validate();
    return out;
}

}  // namespace roofline
