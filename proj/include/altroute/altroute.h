#ifndef ALTROUTE_H
#define ALTROUTE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ALTROUTE_API __declspec(dllexport)
#else
#define ALTROUTE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Node ids are 0-based everywhere in this interface. */

typedef struct altroute_graph altroute_graph;
typedef struct altroute_ag altroute_ag;

typedef enum altroute_status {
    ALTROUTE_OK = 0,
    ALTROUTE_E_INVALID_ARGUMENT,
    ALTROUTE_E_NO_ROUTE,
    ALTROUTE_E_INVALID_PATH,
    ALTROUTE_E_MIXED_ENDPOINTS,
    ALTROUTE_E_NODE_NOT_IN_AG,
    ALTROUTE_E_ZERO_BASE_DISTANCE,
    ALTROUTE_E_NO_CANDIDATES,
    ALTROUTE_E_LABEL_CAP_EXCEEDED,
    ALTROUTE_E_MALFORMED_HEADER,
    ALTROUTE_E_ARC_COUNT_MISMATCH,
    ALTROUTE_E_NEGATIVE_WEIGHT,
    ALTROUTE_E_ID_OUT_OF_RANGE,
    ALTROUTE_E_MALFORMED_INPUT,
    ALTROUTE_E_MISSING_COORDINATES,
    ALTROUTE_E_IO,
    ALTROUTE_E_INVALID_AG,
    ALTROUTE_E_INTERNAL
} altroute_status;

/* Message of the last failure on the calling thread; empty after success. */
ALTROUTE_API const char* altroute_last_error(void);
ALTROUTE_API const char* altroute_status_name(altroute_status status);

/* trace, debug, info, warn, error, critical or off. */
ALTROUTE_API altroute_status altroute_set_log_level(const char* level);

ALTROUTE_API altroute_status altroute_graph_load_dimacs(const char* gr_path, const char* co_path,
                                                        altroute_graph** out);
ALTROUTE_API altroute_status altroute_graph_generate_grid(uint32_t width, uint32_t height, uint64_t seed,
                                                          int64_t perturb, altroute_graph** out);
ALTROUTE_API altroute_status altroute_graph_generate_ring(uint32_t spokes, uint32_t rings, uint64_t seed,
                                                          int64_t perturb, altroute_graph** out);
/* co_path may be NULL. */
ALTROUTE_API altroute_status altroute_graph_write_dimacs(const altroute_graph* graph, const char* gr_path,
                                                         const char* co_path);
ALTROUTE_API uint32_t altroute_graph_node_count(const altroute_graph* graph);
ALTROUTE_API uint32_t altroute_graph_edge_count(const altroute_graph* graph);
ALTROUTE_API void altroute_graph_free(altroute_graph* graph);

/* Negative values of max_cov, epsilon and gamma mean "not set". */
typedef struct altroute_options {
    double alpha;
    int64_t max_decision_edges;
    double max_stretch;
    double max_cov;
    uint32_t k;
    double epsilon;
    double gamma;
    double factor;
    double rejoin;
    int64_t tube_radius;
    uint32_t max_iterations;
    const char* seed_method; /* NULL for none */
    int refine;
} altroute_options;

ALTROUTE_API void altroute_options_init(altroute_options* options);

/* method: plateau, disjoint, yen, pareto or penalty. options may be NULL. */
ALTROUTE_API altroute_status altroute_compute(const altroute_graph* graph, uint32_t source, uint32_t target,
                                              const char* method, const altroute_options* options,
                                              altroute_ag** out);
/* methods: comma separated list. The JSON report is written to *out_json. */
ALTROUTE_API altroute_status altroute_compare(const altroute_graph* graph, uint32_t source, uint32_t target,
                                              const char* methods, const altroute_options* options,
                                              char** out_json);

/* format: json, dot or geojson. Strings returned through char** are freed
   with altroute_string_free. */
ALTROUTE_API altroute_status altroute_ag_render(const altroute_ag* ag, const char* format, char** out);
ALTROUTE_API altroute_status altroute_ag_export(const altroute_ag* ag, const char* format, const char* path);
ALTROUTE_API altroute_status altroute_ag_load_json(const char* path, altroute_ag** out);
/* ALTROUTE_E_INVALID_AG when violations exist; *out_report lists them, one per line. */
ALTROUTE_API altroute_status altroute_ag_validate(const altroute_ag* ag, char** out_report);
/* Recomputes every metric from the graph itself. */
ALTROUTE_API altroute_status altroute_ag_metrics_json(const altroute_ag* ag, char** out_json);
ALTROUTE_API uint32_t altroute_ag_edge_count(const altroute_ag* ag);
ALTROUTE_API int64_t altroute_ag_decision_edges(const altroute_ag* ag);
ALTROUTE_API void altroute_ag_free(altroute_ag* ag);

ALTROUTE_API void altroute_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
