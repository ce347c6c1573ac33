#include "altroute/altroute.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoRoute = 3;

struct Failure {
    altroute_status status;
};

void check(altroute_status status) {
    if (status != ALTROUTE_OK) throw Failure{status};
}

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { altroute_string_free(s); }
};

struct GraphHandle {
    altroute_graph* g = nullptr;
    ~GraphHandle() { altroute_graph_free(g); }
};

struct AgHandle {
    altroute_ag* a = nullptr;
    ~AgHandle() { altroute_ag_free(a); }
};

void emit(const std::string& out, const char* text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file || !(file << text)) {
        std::cerr << "error: cannot write " << out << "\n";
        std::exit(kExitData);
    }
}

struct Endpoints {
    std::string graph;
    std::string coords;
    uint32_t source = 0;
    uint32_t target = 0;
};

void add_endpoint_options(CLI::App* cmd, Endpoints& e) {
    cmd->add_option("--graph", e.graph, "DIMACS .gr file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--coords", e.coords, "DIMACS .co coordinate file")->check(CLI::ExistingFile);
    cmd->add_option("--source", e.source, "source node (1-based)")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--target", e.target, "target node (1-based)")->required()->check(CLI::PositiveNumber);
}

struct Flags {
    altroute_options o;
    std::optional<double> max_cov, epsilon, gamma;
    std::string seed_method;
    bool no_refine = false;
};

void add_run_options(CLI::App* cmd, Flags& f) {
    auto& o = f.o;
    cmd->add_option("--k", o.k, "number of Yen candidates")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", f.epsilon, "length slack of the Pareto tightening")->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma", f.gamma, "trade-off constant of the Pareto tightening")->check(CLI::NonNegativeNumber);
    cmd->add_option("--factor", o.factor, "penalty factor per iteration")->check(CLI::Range(1.0, 2.0));
    cmd->add_option("--rejoin", o.rejoin, "rejoin penalty as a fraction of (factor-1)*d(s,t)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--tube-radius", o.tube_radius, "radius of the tube increase, 0 = off")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-iter", o.max_iterations, "penalty iteration limit")->check(CLI::PositiveNumber);
    cmd->add_option("--seed-method", f.seed_method, "graph the penalty method starts from")
        ->check(CLI::IsMember({"plateau", "disjoint", "yen", "pareto"}));
    cmd->add_option("--alpha", o.alpha, "weight of the average distance in the score");
    cmd->add_option("--max-decision-edges", o.max_decision_edges, "decision-edge cap")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-stretch", o.max_stretch, "allowed stretch over the shortest path")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-cov", f.max_cov, "cap on the coefficient of variation")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-refine", f.no_refine, "skip the refinement step");
}

const altroute_options* finish(Flags& f) {
    f.o.max_cov = f.max_cov.value_or(-1);
    if (f.epsilon) f.o.epsilon = *f.epsilon;
    if (f.gamma) f.o.gamma = *f.gamma;
    f.o.seed_method = f.seed_method.empty() ? nullptr : f.seed_method.c_str();
    f.o.refine = f.no_refine ? 0 : 1;
    return &f.o;
}

GraphHandle load(const Endpoints& e) {
    GraphHandle h;
    check(altroute_graph_load_dimacs(e.graph.c_str(), e.coords.empty() ? nullptr : e.coords.c_str(), &h.g));
    const uint32_t n = altroute_graph_node_count(h.g);
    if (e.source > n || e.target > n) {
        std::cerr << "error: source and target must lie in [1, " << n << "]\n";
        std::exit(kExitUsage);
    }
    return h;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* level = std::getenv("ALTROUTE_LOG")) {
        if (altroute_set_log_level(level) != ALTROUTE_OK) std::cerr << "warning: " << altroute_last_error() << "\n";
    } else {
        altroute_set_log_level("warn");
    }

    CLI::App app{"Alternative route graphs for road networks"};
    app.require_subcommand(1);

    Endpoints compute_ep;
    Flags compute_flags;
    altroute_options_init(&compute_flags.o);
    std::string method, out, format = "json";
    auto* compute = app.add_subcommand("compute", "compute an alternative graph");
    add_endpoint_options(compute, compute_ep);
    compute->add_option("--method", method, "candidate method")
        ->required()
        ->check(CLI::IsMember({"penalty", "plateau", "disjoint", "yen", "pareto"}));
    add_run_options(compute, compute_flags);
    compute->add_option("--out", out, "output file, - for stdout");
    compute->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "dot", "geojson"}));

    std::string ag_path;
    auto* metrics = app.add_subcommand("metrics", "validate a stored graph and recompute its metrics");
    metrics->add_option("--ag", ag_path, "graph document (json)")->required()->check(CLI::ExistingFile);

    std::string shape;
    uint32_t width = 10, height = 10;
    uint64_t seed = 1;
    int64_t perturb = 0;
    std::string gen_out, gen_coords;
    auto* generate = app.add_subcommand("generate", "write a synthetic road network");
    generate->add_option("shape", shape, "grid or ring")->required()->check(CLI::IsMember({"grid", "ring"}));
    generate->add_option("--width", width, "grid width, or spokes of a ring")->check(CLI::PositiveNumber);
    generate->add_option("--height", height, "grid height, or rings of a ring")->check(CLI::PositiveNumber);
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--perturb", perturb, "weights vary in [10-p, 10+p]")->check(CLI::Range(0, 9));
    generate->add_option("--out", gen_out, "output .gr file")->required();
    generate->add_option("--coords-out", gen_coords, "output .co file");

    Endpoints compare_ep;
    Flags compare_flags;
    altroute_options_init(&compare_flags.o);
    std::string methods = "plateau,disjoint,yen,pareto,penalty", compare_out;
    auto* compare = app.add_subcommand("compare", "run several methods under one objective");
    add_endpoint_options(compare, compare_ep);
    compare->add_option("--methods", methods, "comma separated method list");
    add_run_options(compare, compare_flags);
    compare->add_option("--out", compare_out, "report file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*compute) {
            auto graph = load(compute_ep);
            AgHandle ag;
            check(altroute_compute(graph.g, compute_ep.source - 1, compute_ep.target - 1, method.c_str(),
                                   finish(compute_flags), &ag.a));
            OwnedString text;
            check(altroute_ag_render(ag.a, format.c_str(), &text.s));
            emit(out, text.s);
        } else if (*metrics) {
            AgHandle ag;
            check(altroute_ag_load_json(ag_path.c_str(), &ag.a));
            OwnedString report;
            const auto status = altroute_ag_validate(ag.a, &report.s);
            if (status == ALTROUTE_E_INVALID_AG) {
                std::cerr << "invalid alternative graph:\n" << report.s;
                return kExitData;
            }
            check(status);
            OwnedString text;
            check(altroute_ag_metrics_json(ag.a, &text.s));
            std::cout << text.s;
        } else if (*generate) {
            GraphHandle graph;
            if (shape == "grid")
                check(altroute_graph_generate_grid(width, height, seed, perturb, &graph.g));
            else
                check(altroute_graph_generate_ring(width, height, seed, perturb, &graph.g));
            check(altroute_graph_write_dimacs(graph.g, gen_out.c_str(), gen_coords.empty() ? nullptr : gen_coords.c_str()));
        } else if (*compare) {
            auto graph = load(compare_ep);
            OwnedString text;
            check(altroute_compare(graph.g, compare_ep.source - 1, compare_ep.target - 1, methods.c_str(),
                                   finish(compare_flags), &text.s));
            emit(compare_out, text.s);
        }
    } catch (const Failure& f) {
        std::cerr << "error (" << altroute_status_name(f.status) << "): " << altroute_last_error() << "\n";
        if (f.status == ALTROUTE_E_NO_ROUTE) return kExitNoRoute;
        if (f.status == ALTROUTE_E_INVALID_ARGUMENT) return kExitUsage;
        return kExitData;
    }
    return 0;
}
