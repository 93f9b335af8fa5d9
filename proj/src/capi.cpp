#include "geodist/geodist.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "geodist/distances.hpp"
#include "geodist/errors.hpp"
#include "geodist/graph.hpp"
#include "geodist/measures.hpp"
#include "geodist/oracle.hpp"
#include "geodist/serialize.hpp"

using namespace geodist;

struct gd_graph {
    WeightedDigraph g;
};
struct gd_measure {
    AnyMeasure m;
};
struct gd_distance {
    AnyDistance d;
};
struct gd_report {
    AuditReport r;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

template <typename Fn>
gd_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const parse_error& e) {
        set_error(e.what());
        return GD_ERR_PARSE;
    } catch (const precondition_error& e) {
        set_error(e.what());
        return GD_ERR_PRECONDITION;
    } catch (const domain_error& e) {
        set_error(e.what());
        return GD_ERR_DOMAIN;
    } catch (const resource_error& e) {
        set_error(e.what());
        return GD_ERR_RESOURCE;
    } catch (const singular_error& e) {
        set_error(e.what());
        return GD_ERR_SINGULAR;
    } catch (const std::exception& e) {
        set_error(e.what());
        return GD_ERR_INTERNAL;
    }
}

gd_status usage(const std::string& msg) {
    set_error(msg);
    return GD_ERR_USAGE;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Caps caps_from(const gd_options* opts) {
    Caps caps;
    if (!opts) return caps;
    if (opts->path_vertex_cap > 0) caps.path_vertex_cap = opts->path_vertex_cap;
    if (opts->reliability_arc_cap > 0) caps.reliability_arc_cap = opts->reliability_arc_cap;
    if (opts->ie_path_cap > 0) caps.ie_path_cap = opts->ie_path_cap;
    if (opts->forest_vertex_cap > 0) caps.forest_vertex_cap = opts->forest_vertex_cap;
    if (opts->forest_arc_cap > 0) caps.forest_arc_cap = opts->forest_arc_cap;
    return caps;
}

template <typename T>
AnyMeasure compute_measure(const WeightedDigraph& g, const std::string& kind,
                           const gd_options* opts, const Caps& caps) {
    Normalization norm = Normalization::raw;
    if (opts && opts->normalization) {
        std::string n = opts->normalization;
        if (n == "kernel")
            norm = Normalization::kernel;
        else if (n != "raw")
            throw precondition_error("unknown normalization '" + n + "'");
    }
    if (kind == "forest-in") return forest_matrix<T>(g, ForestOrientation::in, norm);
    if (kind == "forest-out") return forest_matrix<T>(g, ForestOrientation::out, norm);
    if (kind == "route") {
        if (!opts || !opts->epsilon)
            throw precondition_error("route measure requires epsilon");
        return route_matrix<T>(g, parse_rational(opts->epsilon));
    }
    if (kind == "path-tau") {
        if (!opts || !opts->tau)
            throw precondition_error("path-tau measure requires tau");
        return path_tau_matrix<T>(g, parse_rational(opts->tau), caps);
    }
    if (kind == "reliability") {
        if (opts && opts->samples > 0) {
            if constexpr (std::is_same_v<T, double>)
                return reliability_mc(g, opts->samples, opts->seed);
            else
                throw precondition_error(
                    "Monte Carlo reliability is float64-only; drop samples for exact");
        }
        return reliability_exact<T>(g, caps);
    }
    throw precondition_error("unknown measure kind '" + kind + "'");
}

// Brute-force recomputation; one check per matrix entry.
template <typename T>
AuditReport oracle_diff(const MeasureMatrix<T>& m, const WeightedDigraph& g,
                        const Caps& caps) {
    AuditReport rep;
    rep.title = "oracle";
    const int n = m.values.n();

    auto add_entry = [&](const char* name, int i, int j, const std::string& got,
                         const std::string& want, bool pass) {
        AuditCheck c;
        c.name = name;
        c.indices = {i + 1, j + 1};
        c.lhs = got;
        c.rhs = want;
        c.pass = pass;
        rep.add(std::move(c));
    };
    auto close = [](double a, double b, double tol) {
        double mag = std::max(std::fabs(a), std::fabs(b));
        return std::fabs(a - b) <= tol * std::max(mag, 1.0);
    };
    auto compare_matrix = [&](const char* name, const Matrix<Rational>& expected) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool pass;
                if constexpr (scalar_traits<T>::exact)
                    pass = m.values(i, j) == expected(i, j);
                else
                    pass = close(m.values(i, j), to_double(expected(i, j)), 1e-9);
                add_entry(name, i, j, scalar_traits<T>::str(m.values(i, j)),
                          format_rational(expected(i, j)), pass);
            }
    };

    switch (m.kind) {
    case MeasureKind::forest_in:
    case MeasureKind::forest_out: {
        auto fe = enumerate_forests(g,
                                    m.kind == MeasureKind::forest_in
                                        ? ForestOrientation::in
                                        : ForestOrientation::out,
                                    caps);
        Matrix<Rational> expected = m.normalization == Normalization::raw
                                        ? fe.fij
                                        : fe.fij.scaled(Rational(1) / fe.f);
        compare_matrix("forest-entry", expected);
        break;
    }
    case MeasureKind::route: {
        if (!m.epsilon) throw precondition_error("route measure lacks epsilon");
        // enough terms for a tail below the comparison slack
        int terms = 60;
        double ratio = 1.0 / (1.0 + to_double(*m.epsilon));
        while (std::pow(ratio, terms + 1) * n / (1.0 - ratio) > 1e-9 && terms < 4000)
            terms += 60;
        auto [partial, tail] = route_series<double>(g, *m.epsilon, terms);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double got;
                if constexpr (scalar_traits<T>::exact)
                    got = to_double(m.values(i, j));
                else
                    got = m.values(i, j);
                bool pass = std::fabs(got - partial(i, j)) <= tail + 1e-9 * std::max(got, 1.0);
                add_entry("route-series-entry", i, j, scalar_traits<T>::str(m.values(i, j)),
                          format_double(partial(i, j)), pass);
            }
        break;
    }
    case MeasureKind::path_tau: {
        if (!m.tau) throw precondition_error("path measure lacks tau");
        auto expected = path_tau_matrix<Rational>(g, *m.tau, caps);
        compare_matrix("path-entry", expected.values);
        break;
    }
    case MeasureKind::reliability: {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational expected = reliability_ie(g, i, j, caps);
                bool pass;
                if (m.samples) {
                    double se = m.standard_error ? (*m.standard_error)(i, j) : 0.0;
                    double got;
                    if constexpr (scalar_traits<T>::exact)
                        got = to_double(m.values(i, j));
                    else
                        got = m.values(i, j);
                    pass = std::fabs(got - to_double(expected)) <= 4.0 * se + 1e-9;
                } else if constexpr (scalar_traits<T>::exact) {
                    pass = m.values(i, j) == expected;
                } else {
                    pass = close(m.values(i, j), to_double(expected), 1e-12);
                }
                add_entry("reliability-entry", i, j, scalar_traits<T>::str(m.values(i, j)),
                          format_rational(expected), pass);
            }
        break;
    }
    }
    return rep;
}

} // namespace

extern "C" {

const char* gd_last_error(void) { return t_last_error.c_str(); }

const char* gd_version(void) { return "1.0.0"; }

void gd_string_free(char* s) { std::free(s); }

gd_status gd_graph_parse(const char* text, const char* format, int undirected,
                         gd_graph** out) {
    if (!text || !format || !out) return usage("null argument");
    return guarded([&]() {
        GraphFormat fmt;
        std::string f = format;
        if (f == "edge-list")
            fmt = GraphFormat::edge_list;
        else if (f == "json")
            fmt = GraphFormat::json;
        else
            return usage("unknown graph format '" + f + "'");
        WeightedDigraph g = parse_graph(text, fmt);
        if (undirected && !g.undirected())
            g = WeightedDigraph(g.order(), g.arcs(), true, g.allow_loops());
        *out = new gd_graph{std::move(g)};
        return GD_OK;
    });
}

void gd_graph_free(gd_graph* g) { delete g; }

int gd_graph_order(const gd_graph* g) { return g ? g->g.order() : 0; }

int gd_graph_is_undirected(const gd_graph* g) { return g && g->g.undirected() ? 1 : 0; }

gd_status gd_graph_transform(const gd_graph* g, const char* op, gd_graph** out) {
    if (!g || !op || !out) return usage("null argument");
    return guarded([&]() {
        std::string o = op;
        TransformOp top;
        if (o == "reverse")
            top = TransformOp::reverse;
        else if (o == "symmetrize")
            top = TransformOp::symmetrize;
        else
            return usage("unknown transform '" + o + "'");
        *out = new gd_graph{transform(g->g, top)};
        return GD_OK;
    });
}

int gd_graph_separates(const gd_graph* g, int i, int j, int k, const char* mode) {
    if (!g || !mode) return -1;
    std::string m = mode;
    SeparationMode sm;
    if (m == "one-way")
        sm = SeparationMode::one_way;
    else if (m == "either-direction")
        sm = SeparationMode::either_direction;
    else
        return -1;
    int n = g->g.order();
    if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n) return -1;
    return separates(g->g, i - 1, j - 1, k - 1, sm) ? 1 : 0;
}

void gd_options_init(gd_options* opts) {
    if (!opts) return;
    std::memset(opts, 0, sizeof(*opts));
    opts->backend = "float64";
    opts->normalization = "raw";
}

gd_status gd_measure_compute(const gd_graph* g, const char* kind, const gd_options* opts,
                             gd_measure** out) {
    if (!g || !kind || !out) return usage("null argument");
    return guarded([&]() {
        Caps caps = caps_from(opts);
        std::string backend = opts && opts->backend ? opts->backend : "float64";
        if (backend == "rational")
            *out = new gd_measure{compute_measure<Rational>(g->g, kind, opts, caps)};
        else if (backend == "float64")
            *out = new gd_measure{compute_measure<double>(g->g, kind, opts, caps)};
        else
            return usage("unknown backend '" + backend + "'");
        return GD_OK;
    });
}

gd_status gd_measure_from_json(const char* text, gd_measure** out) {
    if (!text || !out) return usage("null argument");
    return guarded([&]() {
        *out = new gd_measure{measure_from_json(text)};
        return GD_OK;
    });
}

void gd_measure_free(gd_measure* m) { delete m; }

gd_status gd_tau_threshold(const gd_graph* g, const gd_options* opts, char** tau_out) {
    if (!g || !tau_out) return usage("null argument");
    return guarded([&]() {
        auto tau = tau_threshold_search(g->g, default_tau_grid(), caps_from(opts));
        *tau_out = copy_string(tau ? format_rational(*tau) : std::string());
        return GD_OK;
    });
}

gd_status gd_log_distance(const gd_measure* m, gd_distance** out) {
    if (!m || !out) return usage("null argument");
    return guarded([&]() {
        *out = new gd_distance{std::visit(
            [](const auto& mm) { return AnyDistance(log_distance(mm)); }, m->m)};
        return GD_OK;
    });
}

gd_status gd_plain_distance(const gd_measure* m, gd_distance** out) {
    if (!m || !out) return usage("null argument");
    return guarded([&]() {
        *out = new gd_distance{std::visit(
            [](const auto& mm) { return AnyDistance(plain_distance(mm)); }, m->m)};
        return GD_OK;
    });
}

void gd_distance_free(gd_distance* d) { delete d; }

gd_status gd_metric_report(const gd_distance* d, double tol, gd_report** out) {
    if (!d || !out) return usage("null argument");
    return guarded([&]() {
        *out = new gd_report{std::visit(
            [&](const auto& dd) { return metric_report(dd, tol); }, d->d)};
        return GD_OK;
    });
}

gd_status gd_geodetic_report(const gd_distance* d, const gd_graph* g, const char* mode,
                             double tol, gd_report** out) {
    if (!d || !g || !mode || !out) return usage("null argument");
    return guarded([&]() {
        std::string m = mode;
        SeparationMode sm;
        if (m == "one-way")
            sm = SeparationMode::one_way;
        else if (m == "either-direction")
            sm = SeparationMode::either_direction;
        else
            return usage("unknown separation mode '" + m + "'");
        *out = new gd_report{std::visit(
            [&](const auto& dd) { return geodetic_report(dd, g->g, sm, tol); }, d->d)};
        return GD_OK;
    });
}

gd_status gd_transitional_report(const gd_measure* m, const gd_graph* g, double tol,
                                 gd_report** out) {
    if (!m || !g || !out) return usage("null argument");
    return guarded([&]() {
        *out = new gd_report{std::visit(
            [&](const auto& mm) { return transitional_audit(mm.values, g->g, tol); },
            m->m)};
        return GD_OK;
    });
}

gd_status gd_oracle_report(const gd_measure* m, const gd_graph* g, const gd_options* opts,
                           gd_report** out) {
    if (!m || !g || !out) return usage("null argument");
    return guarded([&]() {
        Caps caps = caps_from(opts);
        *out = new gd_report{std::visit(
            [&](const auto& mm) { return oracle_diff(mm, g->g, caps); }, m->m)};
        return GD_OK;
    });
}

int gd_report_passed(const gd_report* r) { return r && r->r.passed() ? 1 : 0; }

void gd_report_free(gd_report* r) { delete r; }

gd_status gd_measure_to_json(const gd_measure* m, char** out) {
    if (!m || !out) return usage("null argument");
    return guarded([&]() {
        *out = copy_string(std::visit(
            [](const auto& mm) { return measure_to_json(mm).dump(2); }, m->m));
        return GD_OK;
    });
}

gd_status gd_measure_to_csv(const gd_measure* m, char** out) {
    if (!m || !out) return usage("null argument");
    return guarded([&]() {
        *out = copy_string(
            std::visit([](const auto& mm) { return measure_to_csv(mm); }, m->m));
        return GD_OK;
    });
}

gd_status gd_distance_to_json(const gd_distance* d, char** out) {
    if (!d || !out) return usage("null argument");
    return guarded([&]() {
        *out = copy_string(std::visit(
            [](const auto& dd) { return distance_to_json(dd).dump(2); }, d->d));
        return GD_OK;
    });
}

gd_status gd_distance_to_csv(const gd_distance* d, char** out) {
    if (!d || !out) return usage("null argument");
    return guarded([&]() {
        *out = copy_string(
            std::visit([](const auto& dd) { return distance_to_csv(dd); }, d->d));
        return GD_OK;
    });
}

gd_status gd_report_to_json(const gd_report* r, char** out) {
    if (!r || !out) return usage("null argument");
    return guarded([&]() {
        *out = copy_string(report_to_json(r->r).dump(2));
        return GD_OK;
    });
}

} // extern "C"
