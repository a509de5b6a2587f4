#include "roofline/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "roofline/cachesim.hpp"
#include "roofline/chart.hpp"
#include "roofline/errors.hpp"
#include "roofline/ingest.hpp"
#include "roofline/machine.hpp"
#include "roofline/model.hpp"
#include "roofline/report.hpp"
#include "roofline/section.hpp"
#include "roofline/summary_json.hpp"
#include "roofline/workloads.hpp"

namespace roofline::report {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << content;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
}

ingest::CoefficientTable coefficients_from(const std::vector<std::string>& overrides) {
    auto table = ingest::CoefficientTable::defaults();
    for (const std::string& entry : overrides) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--coeff expects NAME=VALUE, got '" + entry + "'");
        double value = 0.0;
        try {
            value = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--coeff '" + entry + "': cannot parse value");
        }
        table.set(entry.substr(0, eq), value);
    }
    return table;
}

std::vector<MeasurementSummary> load_summaries(const std::vector<std::string>& paths) {
    std::vector<MeasurementSummary> summaries;
    summaries.reserve(paths.size());
    for (const std::string& path : paths) summaries.push_back(summary_from_json(read_file(path)));
    return summaries;
}

struct IngestArgs {
    std::string input;
    std::string adapter;
    std::string vtune;
    std::string label;
    std::string out;
    double seconds = 0.0;
    bool has_seconds = false;
    std::vector<std::string> coeffs;
};

struct PlotArgs {
    std::string ceilings;
    std::vector<std::string> summaries;
    std::string out;
    std::string title;
    bool combined = false;
};

struct ReportArgs {
    std::string ceilings;
    std::vector<std::string> summaries;
    std::string out;
    bool combined = false;
    double locality_factor = 1.0;
};

struct SimulateArgs {
    std::string workload;
    std::string hierarchy;
    std::string trace;
    std::string label;
    std::string out;
    std::uint64_t nbands = 2, ngpown = 2, ncouls = 512, nw = 2;
    std::uint64_t n = 100000;
    double flops_per_iter = cachesim::kGppFlopsPerIteration;
    bool no_drain = false;
    bool dump_trace = false;
};

struct BenchArgs {
    bool sweep = false;
    std::string out;
    std::string machine_name = "host";
    int threads = 0;
    int trials = 0;
    double min_time = 0.0;
};

struct SectionArgs {
    std::string precision = "fp64";
    std::string out;
};

void run_ingest(const IngestArgs& a, std::ostream& out) {
    std::string text = read_file(a.input);
    ingest::AdapterId id =
        a.adapter.empty() ? ingest::detect_adapter(text) : ingest::adapter_from_string(a.adapter);
    std::optional<std::string> vtune;
    if (!a.vtune.empty()) vtune = read_file(a.vtune);
    std::optional<double> seconds;
    if (a.has_seconds) seconds = a.seconds;
    std::optional<std::string> label;
    if (!a.label.empty()) label = a.label;

    MeasurementSummary summary =
        ingest::ingest_text(id, text, vtune, seconds, coefficients_from(a.coeffs), label);
    emit(to_canonical_json(summary), a.out, out);
}

void run_plot(const PlotArgs& a, std::ostream& out, std::ostream& err) {
    MachineModel machine = machine::load_ceilings_json(read_file(a.ceilings));
    ChartSpec spec;
    spec.machine = machine;
    spec.title = a.title.empty() ? "Roofline: " + machine.name : a.title;
    SampleBuildOptions options{.combined_series = a.combined};
    for (const MeasurementSummary& summary : load_summaries(a.summaries)) {
        SampleBuildResult built = build_samples(summary, options);
        for (const std::string& w : built.warnings) err << "warning: " << w << "\n";
        spec.samples.insert(spec.samples.end(), built.samples.begin(), built.samples.end());
    }
    emit(render_chart(spec), a.out, out);
    if (!a.out.empty()) out << "wrote " << a.out << "\n";
}

void run_report(const ReportArgs& a, std::ostream& out) {
    MachineModel machine = machine::load_ceilings_json(read_file(a.ceilings));
    ReportOptions options;
    options.samples.combined_series = a.combined;
    options.locality_factor = a.locality_factor;
    emit(emit_report(machine, load_summaries(a.summaries), options), a.out, out);
}

void run_simulate(const SimulateArgs& a, std::ostream& out) {
    std::vector<cachesim::CacheLevelConfig> hierarchy =
        a.hierarchy.empty() ? cachesim::default_hierarchy()
                            : cachesim::hierarchy_from_json(read_file(a.hierarchy));

    cachesim::AccessTrace trace;
    std::map<Precision, double> flops;
    std::string label = a.label;
    if (a.workload == "gpp") {
        cachesim::GppShape shape{a.nbands, a.ngpown, a.ncouls, a.nw};
        trace = cachesim::gen_gpp_trace(shape);
        flops[Precision::FP64] = cachesim::flops_for_gpp(shape, a.flops_per_iter);
        if (label.empty()) label = "gpp";
    } else if (a.workload == "triad") {
        trace = cachesim::gen_stream_triad(a.n);
        flops[Precision::FP64] = cachesim::flops_for_triad(a.n);
        if (label.empty()) label = "triad";
    } else if (a.workload == "trace") {
        if (a.trace.empty()) throw ConfigError("--workload trace requires --trace <file>");
        trace = cachesim::parse_trace(read_file(a.trace));
        if (label.empty()) label = "simulated";
    } else {
        throw ConfigError("unknown workload '" + a.workload + "' (expected gpp, triad or trace)");
    }

    if (a.dump_trace) {
        out << cachesim::format_trace(trace);
        return;
    }
    cachesim::SimOptions options{.drain_dirty_at_end = !a.no_drain};
    cachesim::SimResult result = cachesim::simulate(trace, hierarchy, options);
    emit(to_canonical_json(result.to_summary(label, std::move(flops))), a.out, out);
}

void run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    machine::BenchConfig config = machine::BenchConfig::defaults();
    if (a.threads > 0) config.threads = a.threads;
    if (a.trials > 0) config.trials = a.trials;
    if (a.min_time > 0.0) config.min_seconds_per_point = a.min_time;
    if (!a.sweep) config.working_set_sizes = {256ull * 1024 * 1024};

    err << "measuring compute peaks on " << config.threads << " thread(s)...\n";
    std::map<Precision, double> peaks;
    peaks[Precision::FP64] = machine::bench_compute_peak(config, Precision::FP64).best_gflops;
    peaks[Precision::FP32] = machine::bench_compute_peak(config, Precision::FP32).best_gflops;

    err << "sweeping " << config.working_set_sizes.size() << " working-set size(s)...\n";
    auto sweep = machine::bench_bandwidth_sweep(config);
    for (const auto& point : sweep)
        err << "  " << point.working_set << " B: " << point.gbs << " GB/s\n";

    machine::CeilingsDocument doc = machine::fit_ceilings(sweep, peaks, a.machine_name);
    std::string text = machine::serialize_ceilings(doc);
    machine::load_ceilings(doc);  // sanity: the document must make a valid model
    emit(text, a.out, out);
    if (!a.out.empty()) out << "wrote " << a.out << "\n";
}

void run_section(const SectionArgs& a, std::ostream& out) {
    SectionFileSpec spec = hierarchical_roofline_section(precision_from_string(a.precision));
    emit(emit_section_file(spec), a.out, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical roofline toolkit: turn profiler exports, ceiling files and "
                 "cache simulations into roofline samples, charts and reports."};
    app.name("roofline");
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand(
        "ingest", "Convert a profiler export into canonical summary JSON");
    ingest_cmd->add_option("input", ingest_args.input, "normalized profiler output file")
        ->required();
    ingest_cmd->add_option("--adapter", ingest_args.adapter,
                           "likwid | sde_vtune | nvprof | ncu2019 | ncu2020 (default: detect)");
    ingest_cmd->add_option("--vtune", ingest_args.vtune, "VTune text for the sde_vtune adapter");
    ingest_cmd->add_option("--label", ingest_args.label, "override the summary label");
    ingest_cmd->add_option("--out", ingest_args.out, "write JSON here instead of stdout");
    ingest_cmd
        ->add_option("--seconds", ingest_args.seconds,
                     "elapsed seconds for adapters without a time basis (nvprof)")
        ->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--coeff", ingest_args.coeffs,
                           "coefficient override NAME=VALUE (class or exact metric name)");

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "Render a roofline chart as SVG");
    plot_cmd->add_option("--ceilings", plot_args.ceilings, "machine ceilings JSON")->required();
    plot_cmd->add_option("--summary", plot_args.summaries, "summary JSON file (repeatable)")
        ->required();
    plot_cmd->add_option("--out", plot_args.out, "output SVG path")->required();
    plot_cmd->add_option("--title", plot_args.title, "chart title");
    plot_cmd->add_flag("--combined", plot_args.combined, "add a combined all-precision series");

    ReportArgs report_args;
    auto* report_cmd =
        app.add_subcommand("report", "Classify summaries against ceilings as JSON");
    report_cmd->add_option("--ceilings", report_args.ceilings, "machine ceilings JSON")
        ->required();
    report_cmd->add_option("--summary", report_args.summaries, "summary JSON file (repeatable)")
        ->required();
    report_cmd->add_option("--out", report_args.out, "write JSON here instead of stdout");
    report_cmd->add_flag("--combined", report_args.combined,
                         "add a combined all-precision series");
    report_cmd
        ->add_option("--locality-factor", report_args.locality_factor,
                     "warn when a farther level moves more than factor x nearer-level bytes")
        ->check(CLI::PositiveNumber);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Run a workload through the cache hierarchy simulator");
    sim_cmd->add_option("--workload", sim_args.workload, "gpp | triad | trace")->required();
    sim_cmd->add_option("--hierarchy", sim_args.hierarchy,
                        "hierarchy JSON (default: 32 KiB L1 + 1 MiB L2)");
    sim_cmd->add_option("--trace", sim_args.trace, "trace file for --workload trace");
    sim_cmd->add_option("--label", sim_args.label, "summary label");
    sim_cmd->add_option("--out", sim_args.out, "write JSON here instead of stdout");
    sim_cmd->add_option("--nbands", sim_args.nbands, "gpp: band loop extent");
    sim_cmd->add_option("--ngpown", sim_args.ngpown, "gpp: igp loop extent");
    sim_cmd->add_option("--ncouls", sim_args.ncouls, "gpp: ig loop extent");
    sim_cmd->add_option("--nw", sim_args.nw, "gpp: iw loop extent");
    sim_cmd->add_option("--n", sim_args.n, "triad: element count");
    sim_cmd
        ->add_option("--flops-per-iter", sim_args.flops_per_iter,
                     "gpp: FLOPs per innermost iteration")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_flag("--no-drain", sim_args.no_drain,
                      "do not write dirty lines back when the trace ends");
    sim_cmd->add_flag("--dump-trace", sim_args.dump_trace,
                      "print the generated trace instead of simulating");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Measure host compute and bandwidth ceilings (ERT-style)");
    bench_cmd->add_flag("--sweep", bench_args.sweep,
                        "sweep working-set sizes to split cache-level plateaus");
    bench_cmd->add_option("--out", bench_args.out, "ceilings JSON output path")->required();
    bench_cmd->add_option("--machine", bench_args.machine_name, "machine name for the document");
    bench_cmd->add_option("--threads", bench_args.threads,
                          "worker threads (default: ROOFLINE_BENCH_THREADS or all cores)");
    bench_cmd->add_option("--trials", bench_args.trials, "trials per point (>= 3)");
    bench_cmd->add_option("--min-time", bench_args.min_time, "seconds per timed point");

    SectionArgs section_args;
    auto* section_cmd = app.add_subcommand(
        "section", "Emit a hierarchical roofline profiler section file");
    section_cmd->add_option("--precision", section_args.precision, "fp64 | fp32 | fp16");
    section_cmd->add_option("--out", section_args.out, "write here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (ingest_cmd->parsed()) {
            ingest_args.has_seconds = ingest_cmd->count("--seconds") > 0;
            run_ingest(ingest_args, out);
        } else if (plot_cmd->parsed()) {
            run_plot(plot_args, out, err);
        } else if (report_cmd->parsed()) {
            run_report(report_args, out);
        } else if (sim_cmd->parsed()) {
            run_simulate(sim_args, out);
        } else if (bench_cmd->parsed()) {
            run_bench(bench_args, out, err);
        } else if (section_cmd->parsed()) {
            run_section(section_args, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace roofline::report
