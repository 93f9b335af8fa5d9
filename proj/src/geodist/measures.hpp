#ifndef GEODIST_MEASURES_HPP
#define GEODIST_MEASURES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geodist/graph.hpp"
#include "geodist/matrix.hpp"
#include "geodist/oracle.hpp"

namespace geodist {

enum class MeasureKind { forest_in, forest_out, route, path_tau, reliability };
enum class Normalization { raw, kernel };

inline const char* measure_kind_name(MeasureKind k) {
    switch (k) {
    case MeasureKind::forest_in: return "forest-in";
    case MeasureKind::forest_out: return "forest-out";
    case MeasureKind::route: return "route";
    case MeasureKind::path_tau: return "path-tau";
    case MeasureKind::reliability: return "reliability";
    }
    return "?";
}

/// A similarity matrix S together with the parameters that produced it.
template <typename T>
struct MeasureMatrix {
    Matrix<T> values;
    MeasureKind kind;
    Normalization normalization = Normalization::raw;
    std::optional<Rational> tau;
    std::optional<Rational> epsilon;
    std::optional<std::uint64_t> samples; // Monte Carlo estimate when set
    std::optional<std::uint64_t> seed;
    std::optional<Matrix<double>> standard_error;

    /// Positive rescaling; the logarithmic distance is invariant under this.
    MeasureMatrix scaled(const T& c) const {
        MeasureMatrix r = *this;
        r.values = values.scaled(c);
        return r;
    }
};

/// Forest accessibility: kernel normalization is (I+L)^-1, raw is the
/// forest matrix det(I+L) * (I+L)^-1. In-orientation uses the row
/// Laplacian, out-orientation the column Laplacian.
template <typename T>
MeasureMatrix<T> forest_matrix(const WeightedDigraph& g, ForestOrientation orientation,
                               Normalization normalization = Normalization::raw) {
    Matrix<T> lap = laplacian<T>(g, orientation == ForestOrientation::in
                                        ? LaplacianKind::row
                                        : LaplacianKind::column);
    auto [q, det] = invert_with_det(Matrix<T>::identity(g.order()) + lap);
    MeasureMatrix<T> m;
    m.kind = orientation == ForestOrientation::in ? MeasureKind::forest_in
                                                  : MeasureKind::forest_out;
    m.normalization = normalization;
    m.values = normalization == Normalization::kernel ? std::move(q) : q.scaled(det);
    return m;
}

inline Rational max_out_weight(const WeightedDigraph& g) {
    Rational maxdiag(0);
    for (int i = 0; i < g.order(); ++i) {
        Rational d(0);
        for (int idx : g.out_arcs()[i])
            if (g.arcs()[idx].head != i) d += g.arcs()[idx].weight;
        if (d > maxdiag) maxdiag = d;
    }
    return maxdiag;
}

/// Route accessibility: total damped walk weights, computed in closed form
/// as (I - (1+eps)^-1 (I - eps L))^-1.
template <typename T>
MeasureMatrix<T> route_matrix(const WeightedDigraph& g, const Rational& eps) {
    Rational maxdiag = max_out_weight(g);
    if (eps <= 0 || eps * maxdiag >= 1)
        throw precondition_error(
            "epsilon out of range: requires 0 < epsilon < " +
            (maxdiag == 0 ? std::string("inf") : "1/" + format_rational(maxdiag) +
             " = " + format_rational(Rational(1) / maxdiag)));
    const int n = g.order();
    Matrix<T> lap = laplacian<T>(g, LaplacianKind::row);
    T e = scalar_traits<T>::from_rational(eps);
    T damp = T(1) / (T(1) + e);
    Matrix<T> walk_step = (Matrix<T>::identity(n) - lap.scaled(e)).scaled(damp);
    MeasureMatrix<T> m;
    m.kind = MeasureKind::route;
    m.epsilon = eps;
    m.values = invert(Matrix<T>::identity(n) - walk_step);
    return m;
}

/// Path accessibility: s_ij = sum over simple i->j paths of
/// tau^length * weight. Summed exactly, then cast to the backend.
template <typename T>
MeasureMatrix<T> path_tau_matrix(const WeightedDigraph& g, const Rational& tau,
                                 const Caps& caps = {}) {
    if (tau <= 0)
        throw precondition_error("tau must be positive");
    const int n = g.order();
    std::vector<Rational> tau_pow(n + 1);
    tau_pow[0] = 1;
    for (int k = 1; k <= n; ++k) tau_pow[k] = tau_pow[k - 1] * tau;

    Matrix<T> s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational acc(0);
            for (const Path& p : enumerate_simple_paths(g, i, j, std::nullopt,
                                                        caps.path_vertex_cap))
                acc += tau_pow[p.length()] * p.weight;
            s(i, j) = scalar_traits<T>::from_rational(acc);
        }
    MeasureMatrix<T> m;
    m.kind = MeasureKind::path_tau;
    m.tau = tau;
    m.values = std::move(s);
    return m;
}

/// Default grid for the tau threshold sweep: 1, 1/2, ..., 2^-20.
inline std::vector<Rational> default_tau_grid() {
    std::vector<Rational> grid;
    Rational t(1);
    for (int k = 0; k <= 20; ++k, t /= 2) grid.push_back(t);
    return grid;
}

/// Largest grid value for which the path measure passes the full
/// transitional audit; nullopt when every grid value fails.
inline std::optional<Rational> tau_threshold_search(const WeightedDigraph& g,
                                                    std::vector<Rational> grid,
                                                    const Caps& caps = {}) {
    if (grid.empty())
        throw precondition_error("tau grid must be nonempty");
    std::sort(grid.begin(), grid.end(), std::greater<Rational>());
    for (const Rational& tau : grid) {
        auto s = path_tau_matrix<Rational>(g, tau, caps);
        if (transitional_audit(s.values, g).passed())
            return tau;
    }
    return std::nullopt;
}

/// Exact connection reliability by enumeration of the failure states of
/// the uncertain arcs. Always computed exactly, then cast.
template <typename T>
MeasureMatrix<T> reliability_exact(const WeightedDigraph& g, const Caps& caps = {}) {
    const int n = g.order();
    const int m = static_cast<int>(g.arcs().size());
    if (m > caps.reliability_arc_cap || m >= 63)
        throw resource_error("reliability enumeration cap exceeded: " + std::to_string(m) +
                             " arcs");
    std::vector<int> uncertain; // arcs with weight < 1; weight-1 arcs never fail
    for (int a = 0; a < m; ++a) {
        const Arc& arc = g.arcs()[a];
        if (arc.weight > 1 || arc.weight <= 0)
            throw precondition_error("reliability requires arc weights in (0,1]");
        if (arc.weight < 1) uncertain.push_back(a);
    }
    const int u = static_cast<int>(uncertain.size());

    Matrix<Rational> p(n);
    std::vector<bool> alive(m);
    std::vector<std::vector<int>> adj(n);
    for (std::uint64_t mask = 0; mask < (1ull << u); ++mask) {
        std::fill(alive.begin(), alive.end(), true);
        Rational prob(1);
        for (int t = 0; t < u; ++t) {
            const Arc& arc = g.arcs()[uncertain[t]];
            if (mask & (1ull << t)) {
                prob *= arc.weight;
            } else {
                alive[uncertain[t]] = false;
                prob *= Rational(1) - arc.weight;
            }
        }
        for (int v = 0; v < n; ++v) adj[v].clear();
        for (int a = 0; a < m; ++a)
            if (alive[a]) adj[g.arcs()[a].tail].push_back(g.arcs()[a].head);
        // reachability of the surviving subgraph
        for (int src = 0; src < n; ++src) {
            std::vector<bool> seen(n, false);
            seen[src] = true;
            std::vector<int> stack{src};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : adj[v])
                    if (!seen[h]) { seen[h] = true; stack.push_back(h); }
            }
            for (int dst = 0; dst < n; ++dst)
                if (seen[dst]) p(src, dst) += prob;
        }
    }
    MeasureMatrix<T> r;
    r.kind = MeasureKind::reliability;
    r.values = Matrix<T>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.values(i, j) = scalar_traits<T>::from_rational(i == j ? Rational(1) : p(i, j));
    return r;
}

/// Seeded Monte Carlo reliability estimate with per-entry standard errors.
inline MeasureMatrix<double> reliability_mc(const WeightedDigraph& g, std::uint64_t samples,
                                            std::uint64_t seed) {
    if (samples == 0)
        throw precondition_error("sample count must be positive");
    const int n = g.order();
    const int m = static_cast<int>(g.arcs().size());
    std::vector<double> survival(m);
    for (int a = 0; a < m; ++a) {
        const Arc& arc = g.arcs()[a];
        if (arc.weight > 1 || arc.weight <= 0)
            throw precondition_error("reliability requires arc weights in (0,1]");
        survival[a] = to_double(arc.weight);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::uint64_t> hits(static_cast<size_t>(n) * n, 0);
    std::vector<std::vector<int>> adj(n);
    for (std::uint64_t trial = 0; trial < samples; ++trial) {
        for (int v = 0; v < n; ++v) adj[v].clear();
        for (int a = 0; a < m; ++a)
            if (survival[a] >= 1.0 || unif(rng) < survival[a])
                adj[g.arcs()[a].tail].push_back(g.arcs()[a].head);
        for (int src = 0; src < n; ++src) {
            std::vector<bool> seen(n, false);
            seen[src] = true;
            std::vector<int> stack{src};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int h : adj[v])
                    if (!seen[h]) { seen[h] = true; stack.push_back(h); }
            }
            for (int dst = 0; dst < n; ++dst)
                if (seen[dst]) ++hits[static_cast<size_t>(src) * n + dst];
        }
    }
    MeasureMatrix<double> r;
    r.kind = MeasureKind::reliability;
    r.samples = samples;
    r.seed = seed;
    r.values = Matrix<double>(n);
    Matrix<double> se(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                r.values(i, j) = 1.0;
                continue;
            }
            double est = static_cast<double>(hits[static_cast<size_t>(i) * n + j]) /
                         static_cast<double>(samples);
            r.values(i, j) = est;
            se(i, j) = std::sqrt(est * (1.0 - est) / static_cast<double>(samples));
        }
    r.standard_error = std::move(se);
    return r;
}

} // namespace geodist

#endif
