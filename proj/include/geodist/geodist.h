/*
 * geodist — transitional measures and graph-geodetic logarithmic distances
 * on weighted multidigraphs.
 *
 * C API for the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a
 * gd_status and leaves a human-readable message in gd_last_error() (thread
 * local) on failure. Strings returned through char** out-parameters are
 * owned by the caller and released with gd_string_free().
 *
 * Vertices are 1-based in every textual interface. Scalars cross the
 * boundary as strings: "p/q" rationals, decimal literals, or plain
 * integers.
 */

#ifndef GEODIST_GEODIST_H
#define GEODIST_GEODIST_H

#include <stdint.h>

#if defined(_WIN32)
#define GEODIST_API __declspec(dllexport)
#else
#define GEODIST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
    GD_OK = 0,
    GD_ERR_USAGE = 1,        /* inconsistent arguments */
    GD_ERR_PARSE = 2,        /* malformed input text */
    GD_ERR_PRECONDITION = 3, /* operation precondition violated */
    GD_ERR_DOMAIN = 4,       /* value outside mathematical domain */
    GD_ERR_RESOURCE = 5,     /* enumeration cap exceeded */
    GD_ERR_SINGULAR = 6,     /* singular matrix */
    GD_ERR_INTERNAL = 7
} gd_status;

typedef struct gd_graph gd_graph;
typedef struct gd_measure gd_measure;
typedef struct gd_distance gd_distance;
typedef struct gd_report gd_report;

/* Message for the most recent failure on this thread. */
GEODIST_API const char* gd_last_error(void);
GEODIST_API const char* gd_version(void);
GEODIST_API void gd_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

/* format: "edge-list" or "json". undirected marks an edge-list input as an
 * undirected graph with each edge stored once (JSON input can carry the
 * flag itself). */
GEODIST_API gd_status gd_graph_parse(const char* text, const char* format,
                                     int undirected, gd_graph** out);
GEODIST_API void gd_graph_free(gd_graph* g);
GEODIST_API int gd_graph_order(const gd_graph* g);
GEODIST_API int gd_graph_is_undirected(const gd_graph* g);

/* op: "reverse" or "symmetrize". */
GEODIST_API gd_status gd_graph_transform(const gd_graph* g, const char* op,
                                         gd_graph** out);

/* mode: "one-way" or "either-direction". Returns 1/0, or -1 on error. */
GEODIST_API int gd_graph_separates(const gd_graph* g, int i, int j, int k,
                                   const char* mode);

/* ---- computation options --------------------------------------------- */

typedef struct gd_options {
    const char* backend;       /* "float64" (default) or "rational" */
    const char* normalization; /* "raw" (default) or "kernel" */
    const char* tau;           /* path-tau parameter */
    const char* epsilon;       /* route parameter */
    uint64_t samples;          /* reliability Monte Carlo; 0 = exact */
    uint64_t seed;
    /* enumeration caps; 0 selects the default */
    int path_vertex_cap;      /* default 12 */
    int reliability_arc_cap;  /* default 20 */
    int ie_path_cap;          /* default 15 */
    int forest_vertex_cap;    /* default 8 */
    int forest_arc_cap;       /* default 16 */
} gd_options;

GEODIST_API void gd_options_init(gd_options* opts);

/* ---- measures --------------------------------------------------------- */

/* kind: "forest-in", "forest-out", "route", "path-tau", "reliability".
 * route requires opts->epsilon, path-tau requires opts->tau; reliability
 * with opts->samples > 0 runs the seeded Monte Carlo estimator. */
GEODIST_API gd_status gd_measure_compute(const gd_graph* g, const char* kind,
                                         const gd_options* opts, gd_measure** out);
GEODIST_API gd_status gd_measure_from_json(const char* text, gd_measure** out);
GEODIST_API void gd_measure_free(gd_measure* m);

/* Largest tau on the descending grid 1, 1/2, ..., 2^-20 whose path measure
 * passes the transitional audit; *tau_out is "" when every value fails. */
GEODIST_API gd_status gd_tau_threshold(const gd_graph* g, const gd_options* opts,
                                       char** tau_out);

/* ---- distances --------------------------------------------------------- */

GEODIST_API gd_status gd_log_distance(const gd_measure* m, gd_distance** out);
GEODIST_API gd_status gd_plain_distance(const gd_measure* m, gd_distance** out);
GEODIST_API void gd_distance_free(gd_distance* d);

/* ---- audits ------------------------------------------------------------ */

GEODIST_API gd_status gd_metric_report(const gd_distance* d, double tol,
                                       gd_report** out);
GEODIST_API gd_status gd_geodetic_report(const gd_distance* d, const gd_graph* g,
                                         const char* mode, double tol, gd_report** out);
GEODIST_API gd_status gd_transitional_report(const gd_measure* m, const gd_graph* g,
                                             double tol, gd_report** out);
/* Recompute the measure by brute force (forest/route/reliability/path
 * enumeration) and diff against the closed form. */
GEODIST_API gd_status gd_oracle_report(const gd_measure* m, const gd_graph* g,
                                       const gd_options* opts, gd_report** out);
GEODIST_API int gd_report_passed(const gd_report* r);
GEODIST_API void gd_report_free(gd_report* r);

/* ---- serialization ------------------------------------------------------ */

GEODIST_API gd_status gd_measure_to_json(const gd_measure* m, char** out);
GEODIST_API gd_status gd_measure_to_csv(const gd_measure* m, char** out);
GEODIST_API gd_status gd_distance_to_json(const gd_distance* d, char** out);
GEODIST_API gd_status gd_distance_to_csv(const gd_distance* d, char** out);
GEODIST_API gd_status gd_report_to_json(const gd_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GEODIST_GEODIST_H */
