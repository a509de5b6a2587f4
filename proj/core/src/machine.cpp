#include "roofline/machine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "roofline/errors.hpp"

namespace roofline::machine {

using nlohmann::json;

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Measured: return "measured";
        case Provenance::Vendor: return "vendor";
        case Provenance::File: return "file";
    }
    return "file";
}

namespace {

Provenance provenance_from_string(const std::string& text) {
    if (text == "measured") return Provenance::Measured;
    if (text == "vendor") return Provenance::Vendor;
    if (text == "file") return Provenance::File;
    throw ConfigError("ceilings JSON: /provenance: unknown value '" + text + "'");
}

double require_positive(const json& node, const std::string& path) {
    if (!node.is_number())
        throw ConfigError("ceilings JSON: " + path + ": expected a number");
    double v = node.get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("ceilings JSON: " + path + ": must be positive and finite");
    return v;
}

std::string require_string(const json& node, const std::string& path) {
    if (!node.is_string())
        throw ConfigError("ceilings JSON: " + path + ": expected a string");
    return node.get<std::string>();
}

}  // namespace

CeilingsDocument parse_ceilings_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("ceilings JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("ceilings JSON: /: expected an object");

    CeilingsDocument out;
    if (!doc.contains("machine")) throw ConfigError("ceilings JSON: /machine: missing");
    out.machine = require_string(doc["machine"], "/machine");

    if (!doc.contains("compute") || !doc["compute"].is_array())
        throw ConfigError("ceilings JSON: /compute: expected an array");
    std::size_t i = 0;
    for (const auto& entry : doc["compute"]) {
        std::string path = "/compute/" + std::to_string(i++);
        CeilingsDocument::ComputeEntry c;
        if (!entry.is_object()) throw ConfigError("ceilings JSON: " + path + ": expected object");
        c.label = entry.contains("label") ? require_string(entry["label"], path + "/label") : "";
        if (!entry.contains("precision"))
            throw ConfigError("ceilings JSON: " + path + "/precision: missing");
        try {
            c.precision = precision_from_string(require_string(entry["precision"], path + "/precision"));
        } catch (const ConfigError&) {
            throw ConfigError("ceilings JSON: " + path + "/precision: unknown precision");
        }
        if (!entry.contains("gflops"))
            throw ConfigError("ceilings JSON: " + path + "/gflops: missing");
        c.gflops = require_positive(entry["gflops"], path + "/gflops");
        if (c.label.empty()) c.label = std::string(to_string(c.precision)) + " peak";
        out.compute.push_back(std::move(c));
    }

    if (!doc.contains("bandwidth") || !doc["bandwidth"].is_array())
        throw ConfigError("ceilings JSON: /bandwidth: expected an array");
    i = 0;
    for (const auto& entry : doc["bandwidth"]) {
        std::string path = "/bandwidth/" + std::to_string(i++);
        CeilingsDocument::BandwidthEntry b;
        if (!entry.is_object()) throw ConfigError("ceilings JSON: " + path + ": expected object");
        if (!entry.contains("level"))
            throw ConfigError("ceilings JSON: " + path + "/level: missing");
        b.level = require_string(entry["level"], path + "/level");
        b.label = entry.contains("label") ? require_string(entry["label"], path + "/label")
                                          : b.level + " bandwidth";
        if (!entry.contains("gbs")) throw ConfigError("ceilings JSON: " + path + "/gbs: missing");
        b.gbs = require_positive(entry["gbs"], path + "/gbs");
        if (entry.contains("rank")) {
            if (!entry["rank"].is_number_integer())
                throw ConfigError("ceilings JSON: " + path + "/rank: expected an integer");
            b.rank = entry["rank"].get<int>();
        }
        out.bandwidth.push_back(std::move(b));
    }

    if (doc.contains("provenance"))
        out.provenance = provenance_from_string(require_string(doc["provenance"], "/provenance"));
    return out;
}

std::string serialize_ceilings(const CeilingsDocument& doc) {
    json out;
    out["machine"] = doc.machine;
    json compute = json::array();
    for (const auto& c : doc.compute)
        compute.push_back({{"label", c.label},
                           {"precision", std::string(to_string(c.precision))},
                           {"gflops", c.gflops}});
    json bandwidth = json::array();
    for (const auto& b : doc.bandwidth) {
        json entry = {{"label", b.label}, {"level", b.level}, {"gbs", b.gbs}};
        if (b.rank) entry["rank"] = *b.rank;
        bandwidth.push_back(std::move(entry));
    }
    out["compute"] = std::move(compute);
    out["bandwidth"] = std::move(bandwidth);
    out["provenance"] = std::string(to_string(doc.provenance));
    return out.dump(2) + "\n";
}

MachineModel load_ceilings(const CeilingsDocument& doc) {
    if (doc.compute.empty())
        throw ConfigError("ceilings JSON: /compute: at least one compute ceiling is required");
    if (doc.bandwidth.empty())
        throw ConfigError("ceilings JSON: /bandwidth: at least one bandwidth ceiling is required");

    MachineModel model;
    model.name = doc.machine;
    for (const auto& c : doc.compute) {
        Ceiling ceiling;
        ceiling.kind = CeilingKind::Compute;
        ceiling.label = c.label;
        ceiling.value = c.gflops;
        ceiling.precision = c.precision;
        if (model.find_compute(c.precision))
            throw ConfigError("ceilings JSON: duplicate compute ceiling for " +
                              std::string(to_string(c.precision)));
        model.ceilings.push_back(std::move(ceiling));
    }

    // Hierarchy order: explicit ranks win; otherwise fastest bandwidth is
    // nearest. Ties without explicit ranks are ambiguous.
    std::vector<CeilingsDocument::BandwidthEntry> order = doc.bandwidth;
    bool any_rank = std::any_of(order.begin(), order.end(),
                                [](const auto& b) { return b.rank.has_value(); });
    if (any_rank) {
        if (!std::all_of(order.begin(), order.end(),
                         [](const auto& b) { return b.rank.has_value(); }))
            throw ConfigError("ceilings JSON: /bandwidth: either all entries carry a rank or none");
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return *a.rank < *b.rank; });
    } else {
        for (const auto& a : order)
            for (const auto& b : order)
                if (&a != &b && a.gbs == b.gbs)
                    throw ConfigError("ceilings JSON: /bandwidth: levels '" + a.level + "' and '" +
                                      b.level +
                                      "' have equal GB/s; add explicit ranks to order them");
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return a.gbs > b.gbs; });
    }

    int rank = 0;
    for (const auto& b : order) {
        if (model.find_bandwidth(b.level))
            throw ConfigError("ceilings JSON: duplicate bandwidth ceiling for level '" + b.level +
                              "'");
        model.hierarchy.push_back({b.level, rank++});
        Ceiling ceiling;
        ceiling.kind = CeilingKind::Bandwidth;
        ceiling.label = b.label;
        ceiling.value = b.gbs;
        ceiling.level = b.level;
        model.ceilings.push_back(std::move(ceiling));
    }

    model.validate();
    return model;
}

MachineModel load_ceilings_json(const std::string& text) {
    return load_ceilings(parse_ceilings_json(text));
}

CeilingsDocument to_document(const MachineModel& model, Provenance provenance) {
    CeilingsDocument doc;
    doc.machine = model.name;
    doc.provenance = provenance;
    for (const Ceiling& c : model.ceilings) {
        if (c.kind == CeilingKind::Compute) {
            doc.compute.push_back({c.label, c.precision, c.value});
        } else {
            CeilingsDocument::BandwidthEntry b;
            b.label = c.label;
            b.level = c.level;
            b.gbs = c.value;
            for (const MemoryLevel& l : model.hierarchy)
                if (l.name == c.level) b.rank = l.rank;
            doc.bandwidth.push_back(std::move(b));
        }
    }
    return doc;
}

void BenchConfig::validate() const {
    if (trials < 3) throw ConfigError("bench config: trials must be >= 3");
    if (!(min_seconds_per_point > 0.0))
        throw ConfigError("bench config: min_seconds_per_point must be positive");
    if (threads < 1) throw ConfigError("bench config: threads must be >= 1");
    if (!std::is_sorted(working_set_sizes.begin(), working_set_sizes.end()))
        throw ConfigError("bench config: working_set_sizes must be ascending");
}

BenchConfig BenchConfig::defaults() {
    BenchConfig config;
    for (std::uint64_t size = 2 * 1024; size <= 256ull * 1024 * 1024; size *= 4)
        config.working_set_sizes.push_back(size);
    config.flops_per_element_ladder = {1, 2, 4, 8, 16};
    config.threads = static_cast<int>(std::thread::hardware_concurrency());
    if (config.threads < 1) config.threads = 1;
    if (const char* env = std::getenv("ROOFLINE_BENCH_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) config.threads = n;
    }
    return config;
}

CeilingsDocument fit_ceilings(const std::vector<BandwidthPoint>& sweep,
                              const std::map<Precision, double>& compute_peaks,
                              const std::string& machine_name) {
    if (sweep.empty()) throw BenchError("bandwidth sweep is empty; no plateau to fit");

    std::vector<BandwidthPoint> points = sweep;
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.working_set < b.working_set; });

    auto median = [](std::vector<double> values) {
        std::sort(values.begin(), values.end());
        std::size_t n = values.size();
        return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    };

    // Walk sizes ascending; a drop of more than the gap threshold below the
    // running plateau median opens a new plateau (a cache boundary).
    std::vector<std::vector<double>> plateaus;
    for (const BandwidthPoint& p : points) {
        if (!(p.gbs >= 0.0) || !std::isfinite(p.gbs))
            throw BenchError("bandwidth sweep contains a non-finite point");
        if (plateaus.empty()) {
            plateaus.push_back({p.gbs});
            continue;
        }
        double running = median(plateaus.back());
        if (p.gbs < running * (1.0 - kPlateauGapThreshold))
            plateaus.push_back({p.gbs});
        else
            plateaus.back().push_back(p.gbs);
    }

    CeilingsDocument doc;
    doc.machine = machine_name;
    doc.provenance = Provenance::Measured;
    for (const auto& [precision, gflops] : compute_peaks) {
        if (!(gflops > 0.0))
            throw BenchError("compute peak for " + std::string(to_string(precision)) +
                             " must be positive");
        doc.compute.push_back(
            {std::string(to_string(precision)) + " peak (measured)", precision, gflops});
    }
    for (std::size_t i = 0; i < plateaus.size(); ++i) {
        CeilingsDocument::BandwidthEntry b;
        b.level = (i + 1 == plateaus.size()) ? "DRAM" : "L" + std::to_string(i + 1);
        b.label = b.level + " (measured)";
        b.rank = static_cast<int>(i);
        b.gbs = median(plateaus[i]);
        doc.bandwidth.push_back(std::move(b));
    }
    return doc;
}

}  // namespace roofline::machine
