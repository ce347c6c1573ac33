#include "altroute/altroute.h"

#include "altroute/io.hpp"
#include "altroute/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <cstring>
#include <sstream>

struct altroute_graph {
    altroute::RoadGraph graph;
};

struct altroute_ag {
    altroute::AGDocument doc;
};

namespace {

thread_local std::string last_error;

altroute_status status_of(altroute::ErrorCode code) { return static_cast<altroute_status>(static_cast<int>(code) + 1); }

template <class F>
altroute_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const altroute::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    }
    return ALTROUTE_E_INTERNAL;
}

altroute_status invalid(const char* what) {
    last_error = what;
    return ALTROUTE_E_INVALID_ARGUMENT;
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::optional<double> maybe(double v) { return v < 0 ? std::nullopt : std::optional<double>(v); }

altroute::RunConfig run_config(const altroute_options* options) {
    altroute_options o;
    altroute_options_init(&o);
    if (options) o = *options;
    altroute::RunConfig cfg;
    cfg.objective.alpha = o.alpha;
    cfg.objective.max_decision_edges = o.max_decision_edges;
    cfg.objective.max_stretch = o.max_stretch;
    cfg.objective.max_cov = maybe(o.max_cov);
    cfg.yen_k = o.k;
    cfg.pareto_epsilon = maybe(o.epsilon);
    cfg.pareto_gamma = maybe(o.gamma);
    cfg.penalty.factor = o.factor;
    cfg.penalty.rejoin_fraction = o.rejoin;
    cfg.penalty.tube_radius = o.tube_radius;
    cfg.penalty.max_iterations = o.max_iterations;
    if (o.seed_method && *o.seed_method) cfg.seed_method = altroute::method_from_string(o.seed_method);
    cfg.refine = o.refine != 0;
    return cfg;
}

std::vector<altroute::Method> parse_methods(const std::string& list) {
    std::vector<altroute::Method> methods;
    std::stringstream in(list);
    for (std::string name; std::getline(in, name, ',');)
        if (!name.empty()) methods.push_back(altroute::method_from_string(name));
    return methods;
}

} // namespace

extern "C" {

const char* altroute_last_error(void) { return last_error.c_str(); }

const char* altroute_status_name(altroute_status status) {
    switch (status) {
    case ALTROUTE_OK: return "Ok";
    case ALTROUTE_E_INVALID_AG: return "InvalidAG";
    case ALTROUTE_E_INTERNAL: return "Internal";
    default: break;
    }
    if (status > ALTROUTE_OK && status < ALTROUTE_E_INVALID_AG)
        return altroute::to_string(static_cast<altroute::ErrorCode>(status - 1));
    return "Unknown";
}

altroute_status altroute_set_log_level(const char* level) {
    if (!level) return invalid("null log level");
    return guarded([&] {
        const auto parsed = spdlog::level::from_str(level);
        if (parsed == spdlog::level::off && std::strcmp(level, "off") != 0)
            throw altroute::Error(altroute::ErrorCode::InvalidArgument, std::string("unknown log level '") + level + "'");
        spdlog::set_level(parsed);
        return ALTROUTE_OK;
    });
}

altroute_status altroute_graph_load_dimacs(const char* gr_path, const char* co_path, altroute_graph** out) {
    if (!gr_path || !out) return invalid("null argument");
    return guarded([&] {
        std::optional<std::filesystem::path> co;
        if (co_path) co = co_path;
        *out = new altroute_graph{altroute::load_dimacs(gr_path, co)};
        return ALTROUTE_OK;
    });
}

altroute_status altroute_graph_generate_grid(uint32_t width, uint32_t height, uint64_t seed, int64_t perturb,
                                             altroute_graph** out) {
    if (!out) return invalid("null argument");
    return guarded([&] {
        *out = new altroute_graph{altroute::generate_grid(width, height, seed, perturb)};
        return ALTROUTE_OK;
    });
}

altroute_status altroute_graph_generate_ring(uint32_t spokes, uint32_t rings, uint64_t seed, int64_t perturb,
                                             altroute_graph** out) {
    if (!out) return invalid("null argument");
    return guarded([&] {
        *out = new altroute_graph{altroute::generate_ring(spokes, rings, seed, perturb)};
        return ALTROUTE_OK;
    });
}

altroute_status altroute_graph_write_dimacs(const altroute_graph* graph, const char* gr_path, const char* co_path) {
    if (!graph || !gr_path) return invalid("null argument");
    return guarded([&] {
        std::ostringstream gr, co;
        altroute::write_dimacs(graph->graph, gr, co_path ? &co : nullptr);
        altroute::write_text_file(gr_path, gr.str());
        if (co_path) altroute::write_text_file(co_path, co.str());
        return ALTROUTE_OK;
    });
}

uint32_t altroute_graph_node_count(const altroute_graph* graph) { return graph ? graph->graph.node_count() : 0; }
uint32_t altroute_graph_edge_count(const altroute_graph* graph) { return graph ? graph->graph.edge_count() : 0; }
void altroute_graph_free(altroute_graph* graph) { delete graph; }

void altroute_options_init(altroute_options* o) {
    if (!o) return;
    const altroute::RunConfig defaults;
    o->alpha = defaults.objective.alpha;
    o->max_decision_edges = defaults.objective.max_decision_edges;
    o->max_stretch = defaults.objective.max_stretch;
    o->max_cov = -1;
    o->k = static_cast<uint32_t>(defaults.yen_k);
    o->epsilon = defaults.pareto_epsilon.value_or(-1);
    o->gamma = defaults.pareto_gamma.value_or(-1);
    o->factor = defaults.penalty.factor;
    o->rejoin = defaults.penalty.rejoin_fraction;
    o->tube_radius = defaults.penalty.tube_radius;
    o->max_iterations = static_cast<uint32_t>(defaults.penalty.max_iterations);
    o->seed_method = nullptr;
    o->refine = defaults.refine ? 1 : 0;
}

altroute_status altroute_compute(const altroute_graph* graph, uint32_t source, uint32_t target, const char* method,
                                 const altroute_options* options, altroute_ag** out) {
    if (!graph || !method || !out) return invalid("null argument");
    return guarded([&] {
        const auto cfg = run_config(options);
        const auto run = altroute::run_method(graph->graph, source, target, altroute::method_from_string(method), cfg);
        *out = new altroute_ag{altroute::to_document(graph->graph, run)};
        return ALTROUTE_OK;
    });
}

altroute_status altroute_compare(const altroute_graph* graph, uint32_t source, uint32_t target, const char* methods,
                                 const altroute_options* options, char** out_json) {
    if (!graph || !methods || !out_json) return invalid("null argument");
    return guarded([&] {
        const auto report = altroute::compare(graph->graph, source, target, parse_methods(methods), run_config(options));
        *out_json = duplicate(report.dump(2) + "\n");
        return ALTROUTE_OK;
    });
}

altroute_status altroute_ag_render(const altroute_ag* ag, const char* format, char** out) {
    if (!ag || !format || !out) return invalid("null argument");
    return guarded([&] {
        *out = duplicate(altroute::render(ag->doc, altroute::export_format_from_string(format)));
        return ALTROUTE_OK;
    });
}

altroute_status altroute_ag_export(const altroute_ag* ag, const char* format, const char* path) {
    if (!ag || !format || !path) return invalid("null argument");
    return guarded([&] {
        altroute::export_document(ag->doc, altroute::export_format_from_string(format), path);
        return ALTROUTE_OK;
    });
}

altroute_status altroute_ag_load_json(const char* path, altroute_ag** out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] {
        *out = new altroute_ag{altroute::load_document(path)};
        return ALTROUTE_OK;
    });
}

altroute_status altroute_ag_validate(const altroute_ag* ag, char** out_report) {
    if (!ag || !out_report) return invalid("null argument");
    return guarded([&] {
        const auto violations = altroute::validate(ag->doc.ag);
        std::string report;
        for (const auto& v : violations)
            report += std::string(altroute::to_string(v.kind)) + ": " + v.message + "\n";
        *out_report = duplicate(report);
        if (violations.empty()) return ALTROUTE_OK;
        last_error = std::to_string(violations.size()) + " violation(s)";
        return ALTROUTE_E_INVALID_AG;
    });
}

altroute_status altroute_ag_metrics_json(const altroute_ag* ag, char** out_json) {
    if (!ag || !out_json) return invalid("null argument");
    return guarded([&] {
        const auto report = altroute::compute_metrics(ag->doc.ag, ag->doc.metrics.base_distance);
        *out_json = duplicate(altroute::to_json(report).dump(2) + "\n");
        return ALTROUTE_OK;
    });
}

uint32_t altroute_ag_edge_count(const altroute_ag* ag) {
    return ag ? static_cast<uint32_t>(ag->doc.ag.edges.size()) : 0;
}

int64_t altroute_ag_decision_edges(const altroute_ag* ag) {
    if (!ag) return -1;
    try {
        return altroute::decision_edges(ag->doc.ag);
    } catch (const std::exception& e) {
        last_error = e.what();
        return -1;
    }
}

void altroute_ag_free(altroute_ag* ag) { delete ag; }

void altroute_string_free(char* s) { std::free(s); }

} // extern "C"
