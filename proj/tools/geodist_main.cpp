// geodist command-line front end. Talks to the core exclusively through
// the C API in geodist/geodist.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geodist/geodist.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAuditFailure = 2;

bool g_error_json = false;

[[noreturn]] void die(gd_status status, const std::string& msg) {
    if (g_error_json) {
        // hand-rolled to avoid escaping surprises in the common case
        std::string escaped;
        for (char c : msg) {
            if (c == '"' || c == '\\') escaped += '\\';
            if (c == '\n') { escaped += "\\n"; continue; }
            escaped += c;
        }
        std::cerr << "{\"error\": \"" << escaped << "\", \"status\": " << int(status)
                  << "}\n";
    } else {
        std::cerr << "geodist: error: " << msg << "\n";
    }
    std::exit(kExitUsage);
}

void check(gd_status status) {
    if (status != GD_OK) die(status, gd_last_error());
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) die(GD_ERR_USAGE, "cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) die(GD_ERR_USAGE, "cannot open output file '" + path + "'");
    out << content;
}

// RAII wrappers around the opaque handles
using GraphPtr = std::unique_ptr<gd_graph, decltype(&gd_graph_free)>;
using MeasurePtr = std::unique_ptr<gd_measure, decltype(&gd_measure_free)>;
using DistancePtr = std::unique_ptr<gd_distance, decltype(&gd_distance_free)>;
using ReportPtr = std::unique_ptr<gd_report, decltype(&gd_report_free)>;

std::string take_string(char* s) {
    std::string out = s ? s : "";
    gd_string_free(s);
    return out;
}

struct CommonArgs {
    std::string input;
    std::string format = "edge-list";
    bool undirected = false;
    std::string measure = "forest-in";
    std::string tau, epsilon;
    bool tau_search = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string backend = "float64";
    std::string normalization = "raw";
    std::string output_format = "json";
    std::string output_path;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_measure = true) {
    cmd->add_option("-i,--input", a.input, "graph file ('-' for stdin)")->required();
    cmd->add_option("-f,--format", a.format, "input format: edge-list|json")
        ->check(CLI::IsMember({"edge-list", "json"}));
    cmd->add_flag("--undirected", a.undirected,
                  "treat edge-list input as an undirected graph (edges stored once)");
    if (with_measure) {
        cmd->add_option("-m,--measure", a.measure,
                        "forest-in|forest-out|route|path-tau|reliability")
            ->check(CLI::IsMember(
                {"forest-in", "forest-out", "route", "path-tau", "reliability"}));
        cmd->add_option("--tau", a.tau, "path damping parameter (rational or decimal)");
        cmd->add_flag("--tau-search", a.tau_search,
                      "pick tau by the audited grid search instead of --tau");
        cmd->add_option("--epsilon", a.epsilon, "route damping parameter");
        cmd->add_option("--samples", a.samples,
                        "Monte Carlo sample count for reliability (0 = exact)");
        cmd->add_option("--seed", a.seed, "Monte Carlo seed");
        cmd->add_option("--backend", a.backend, "float64|rational")
            ->check(CLI::IsMember({"float64", "rational"}));
        cmd->add_option("--normalization", a.normalization, "raw|kernel")
            ->check(CLI::IsMember({"raw", "kernel"}));
    }
    cmd->add_option("-o,--output", a.output_format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output-path", a.output_path, "write output here (default stdout)");
}

// GEODIST_CAPS="path=12,rel-arcs=20,ie-paths=15,forest-n=8,forest-arcs=16"
void apply_caps_env(gd_options& opts) {
    const char* env = std::getenv("GEODIST_CAPS");
    if (!env) return;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            die(GD_ERR_USAGE, "GEODIST_CAPS entries must look like key=value");
        std::string key = item.substr(0, eq);
        int value = std::atoi(item.c_str() + eq + 1);
        if (value <= 0) die(GD_ERR_USAGE, "GEODIST_CAPS value must be positive: " + item);
        if (key == "path")
            opts.path_vertex_cap = value;
        else if (key == "rel-arcs")
            opts.reliability_arc_cap = value;
        else if (key == "ie-paths")
            opts.ie_path_cap = value;
        else if (key == "forest-n")
            opts.forest_vertex_cap = value;
        else if (key == "forest-arcs")
            opts.forest_arc_cap = value;
        else
            die(GD_ERR_USAGE, "unknown GEODIST_CAPS key '" + key + "'");
    }
}

GraphPtr load_graph(const CommonArgs& a) {
    gd_graph* g = nullptr;
    check(gd_graph_parse(read_file(a.input).c_str(), a.format.c_str(),
                         a.undirected ? 1 : 0, &g));
    GraphPtr graph(g, gd_graph_free);
    if (gd_graph_is_undirected(graph.get())) {
        // measures run on the symmetric digraph
        gd_graph* sym = nullptr;
        check(gd_graph_transform(graph.get(), "symmetrize", &sym));
        return GraphPtr(sym, gd_graph_free);
    }
    return graph;
}

MeasurePtr compute_measure(const CommonArgs& a, const gd_graph* g, gd_options& opts) {
    opts.backend = a.backend.c_str();
    opts.normalization = a.normalization.c_str();
    std::string tau = a.tau;
    if (a.measure == "path-tau" && a.tau_search) {
        char* found = nullptr;
        check(gd_tau_threshold(g, &opts, &found));
        tau = take_string(found);
        if (tau.empty()) die(GD_ERR_PRECONDITION, "tau grid search found no passing value");
    }
    if (!tau.empty()) opts.tau = tau.c_str();
    if (!a.epsilon.empty()) opts.epsilon = a.epsilon.c_str();
    opts.samples = a.samples;
    opts.seed = a.seed;
    gd_measure* m = nullptr;
    // keep tau alive through the call
    gd_status st = gd_measure_compute(g, a.measure.c_str(), &opts, &m);
    check(st);
    return MeasurePtr(m, gd_measure_free);
}

int run_compute(const CommonArgs& a, const std::string& measure_json, bool plain,
                bool measure_only) {
    gd_options opts;
    gd_options_init(&opts);
    apply_caps_env(opts);

    MeasurePtr measure(nullptr, gd_measure_free);
    GraphPtr graph(nullptr, gd_graph_free);
    if (!measure_json.empty()) {
        gd_measure* m = nullptr;
        check(gd_measure_from_json(read_file(measure_json).c_str(), &m));
        measure = MeasurePtr(m, gd_measure_free);
    } else {
        graph = load_graph(a);
        measure = compute_measure(a, graph.get(), opts);
    }

    char* text = nullptr;
    std::string out;
    if (a.output_format == "csv") {
        check(gd_measure_to_csv(measure.get(), &text));
        out += "# measure\n" + take_string(text);
    } else {
        check(gd_measure_to_json(measure.get(), &text));
        out += take_string(text);
    }
    if (!measure_only) {
        gd_distance* d = nullptr;
        check(plain ? gd_plain_distance(measure.get(), &d)
                    : gd_log_distance(measure.get(), &d));
        DistancePtr dist(d, gd_distance_free);
        if (a.output_format == "csv") {
            check(gd_distance_to_csv(dist.get(), &text));
            out += "# distance\n" + take_string(text);
        } else {
            check(gd_distance_to_json(dist.get(), &text));
            out += "\n" + take_string(text);
        }
    }
    write_output(a.output_path, out);
    return kExitOk;
}

int run_verify(const CommonArgs& a, bool metric, const std::string& geodetic_mode,
               bool transitional, bool oracle_compare, bool plain, double tol) {
    gd_options opts;
    gd_options_init(&opts);
    apply_caps_env(opts);
    GraphPtr graph = load_graph(a);
    MeasurePtr measure = compute_measure(a, graph.get(), opts);

    bool any_requested = metric || !geodetic_mode.empty() || transitional || oracle_compare;
    if (!any_requested) die(GD_ERR_USAGE, "verify: no audit requested");

    std::vector<ReportPtr> reports;
    auto collect = [&](gd_report* r) { reports.emplace_back(r, gd_report_free); };

    if (transitional) {
        gd_report* r = nullptr;
        check(gd_transitional_report(measure.get(), graph.get(), tol, &r));
        collect(r);
    }
    if (oracle_compare) {
        gd_report* r = nullptr;
        check(gd_oracle_report(measure.get(), graph.get(), &opts, &r));
        collect(r);
    }
    if (metric || !geodetic_mode.empty()) {
        gd_distance* d = nullptr;
        check(plain ? gd_plain_distance(measure.get(), &d)
                    : gd_log_distance(measure.get(), &d));
        DistancePtr dist(d, gd_distance_free);
        if (metric) {
            gd_report* r = nullptr;
            check(gd_metric_report(dist.get(), tol, &r));
            collect(r);
        }
        if (!geodetic_mode.empty()) {
            gd_report* r = nullptr;
            check(gd_geodetic_report(dist.get(), graph.get(), geodetic_mode.c_str(), tol, &r));
            collect(r);
        }
    }

    bool all_passed = true;
    std::string out = "[";
    for (size_t k = 0; k < reports.size(); ++k) {
        char* text = nullptr;
        check(gd_report_to_json(reports[k].get(), &text));
        out += (k ? ",\n" : "\n") + take_string(text);
        if (!gd_report_passed(reports[k].get())) all_passed = false;
    }
    out += "\n]";
    write_output(a.output_path, out);
    return all_passed ? kExitOk : kExitAuditFailure;
}

int run_oracle(const CommonArgs& a) {
    gd_options opts;
    gd_options_init(&opts);
    apply_caps_env(opts);
    GraphPtr graph = load_graph(a);
    MeasurePtr measure = compute_measure(a, graph.get(), opts);
    gd_report* r = nullptr;
    check(gd_oracle_report(measure.get(), graph.get(), &opts, &r));
    ReportPtr rep(r, gd_report_free);
    char* text = nullptr;
    check(gd_report_to_json(rep.get(), &text));
    write_output(a.output_path, take_string(text));
    return gd_report_passed(rep.get()) ? kExitOk : kExitAuditFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transitional graph measures and graph-geodetic log distances"};
    app.require_subcommand(1);
    app.add_flag("--error-json", g_error_json, "report errors as JSON on stderr");
    app.set_version_flag("--version", std::string(gd_version()));

    CommonArgs compute_args;
    std::string measure_json;
    bool compute_plain = false, measure_only = false;
    CLI::App* compute = app.add_subcommand("compute", "measure matrix + distance matrix");
    add_common(compute, compute_args);
    compute->add_option("--measure-json", measure_json,
                        "skip graph input; read a measure JSON document instead");
    compute->get_option("--input")->required(false);
    compute->add_flag("--plain", compute_plain, "plain transform instead of --log");
    bool log_flag = false;
    compute->add_flag("--log", log_flag, "logarithmic transform (default)");
    compute->add_flag("--measure-only", measure_only, "emit only the measure matrix");

    CommonArgs verify_args;
    bool v_metric = false, v_transitional = false, v_oracle = false, v_plain = false;
    std::string v_geodetic;
    double v_tol = 1e-9;
    CLI::App* verify = app.add_subcommand("verify", "run property audits, exit 2 on failure");
    add_common(verify, verify_args);
    verify->add_flag("--metric", v_metric, "metric axioms on the distance matrix");
    verify->add_option("--geodetic", v_geodetic,
                       "geodetic biconditional: one-way|either-direction")
        ->check(CLI::IsMember({"one-way", "either-direction"}));
    verify->add_flag("--transitional", v_transitional,
                     "transition inequality / bottleneck identity audit");
    verify->add_flag("--oracle-compare", v_oracle, "diff against brute-force recomputation");
    verify->add_flag("--plain", v_plain, "audit the plain transform instead of log");
    verify->add_option("--tol", v_tol, "float comparison tolerance (default 1e-9)");

    CommonArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force recomputation + diff");
    add_common(oracle, oracle_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help/--version
        if (g_error_json) {
            std::cerr << "{\"error\": \"" << e.what() << "\", \"status\": 1}\n";
            return kExitUsage;
        }
        app.exit(e);
        return kExitUsage;
    }

    if (compute->parsed()) {
        if (measure_json.empty() && compute_args.input.empty())
            die(GD_ERR_USAGE, "compute: either --input or --measure-json is required");
        if (compute_args.measure == "path-tau" && compute_args.tau.empty() &&
            !compute_args.tau_search && measure_json.empty())
            die(GD_ERR_USAGE, "compute: path-tau requires --tau or --tau-search");
        if (compute_args.measure == "route" && compute_args.epsilon.empty() &&
            measure_json.empty())
            die(GD_ERR_USAGE, "compute: route requires --epsilon");
        return run_compute(compute_args, measure_json, compute_plain, measure_only);
    }
    if (verify->parsed()) {
        if (verify_args.measure == "path-tau" && verify_args.tau.empty() &&
            !verify_args.tau_search)
            die(GD_ERR_USAGE, "verify: path-tau requires --tau or --tau-search");
        if (verify_args.measure == "route" && verify_args.epsilon.empty())
            die(GD_ERR_USAGE, "verify: route requires --epsilon");
        return run_verify(verify_args, v_metric, v_geodetic, v_transitional, v_oracle,
                          v_plain, v_tol);
    }
    if (oracle->parsed()) {
        if (oracle_args.measure == "path-tau" && oracle_args.tau.empty() &&
            !oracle_args.tau_search)
            die(GD_ERR_USAGE, "oracle: path-tau requires --tau or --tau-search");
        if (oracle_args.measure == "route" && oracle_args.epsilon.empty())
            die(GD_ERR_USAGE, "oracle: route requires --epsilon");
        return run_oracle(oracle_args);
    }
    return kExitUsage;
}
