#ifndef GEODIST_ORACLE_HPP
#define GEODIST_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "geodist/graph.hpp"
#include "geodist/matrix.hpp"
#include "geodist/report.hpp"

// Brute-force recomputations used to validate the closed-form constructors.
// Everything here is exhaustive and exact; nothing shares code with the
// matrix-based implementations it cross-checks.

namespace geodist {

enum class ForestOrientation { in, out };

struct ForestEnumeration {
    Rational f;            // total forest weight
    Matrix<Rational> fij;  // per-pair forest weights
    std::uint64_t count = 0;
};

namespace detail {

// Comparison helpers shared by the audits: exact for rationals, relative
// tolerance on the products for float.
template <typename T>
bool audit_equal(const T& lhs, const T& rhs, double tol) {
    if constexpr (scalar_traits<T>::exact) {
        (void)tol;
        return lhs == rhs;
    } else {
        double l = lhs, r = rhs;
        double m = std::max(std::fabs(l), std::fabs(r));
        if (m == 0.0) return true;
        return std::fabs(l - r) <= tol * m;
    }
}

template <typename T>
bool audit_leq(const T& lhs, const T& rhs, double tol) {
    if constexpr (scalar_traits<T>::exact) {
        (void)tol;
        return lhs <= rhs;
    } else {
        double l = lhs, r = rhs;
        double m = std::max(std::fabs(l), std::fabs(r));
        return l <= r + tol * m;
    }
}

} // namespace detail

/// Enumerate all spanning converging (in) or diverging (out) forests by
/// iterating arc subsets. Parallel arcs are distinct objects here.
inline ForestEnumeration enumerate_forests(const WeightedDigraph& g,
                                           ForestOrientation orientation,
                                           const Caps& caps = {}) {
    const int n = g.order();
    const int m = static_cast<int>(g.arcs().size());
    if (n > caps.forest_vertex_cap || m > caps.forest_arc_cap || m >= 63)
        throw resource_error("forest enumeration cap exceeded (n=" + std::to_string(n) +
                             ", arcs=" + std::to_string(m) + ")");
    if (g.has_loops())
        throw precondition_error("forest enumeration requires a loop-free graph");

    ForestEnumeration out{Rational(0), Matrix<Rational>(n), 0};
    std::vector<int> link(n); // unique out-arc head (in) / in-arc tail (out), or -1

    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        std::fill(link.begin(), link.end(), -1);
        bool ok = true;
        Rational w(1);
        for (int a = 0; a < m && ok; ++a) {
            if (!(mask & (1ull << a))) continue;
            const Arc& arc = g.arcs()[a];
            int from = orientation == ForestOrientation::in ? arc.tail : arc.head;
            int to = orientation == ForestOrientation::in ? arc.head : arc.tail;
            if (link[from] != -1) { ok = false; break; } // degree constraint
            link[from] = to;
            w *= arc.weight;
        }
        if (!ok) continue;
        // acyclicity: following the unique links must terminate
        for (int v = 0; v < n && ok; ++v) {
            int steps = 0;
            for (int u = v; u != -1; u = link[u])
                if (++steps > n) { ok = false; break; }
        }
        if (!ok) continue;

        out.f += w;
        out.count += 1;
        for (int v = 0; v < n; ++v) {
            int root = v;
            while (link[root] != -1) root = link[root];
            if (orientation == ForestOrientation::in)
                out.fij(v, root) += w; // v belongs to the tree converging to root
            else
                out.fij(root, v) += w; // v belongs to the tree diverging from root
        }
    }
    return out;
}

/// Spanning rooted forests of an undirected multigraph (edges stored once,
/// graph flagged undirected). fij(i,j) = weight of forests with i in the
/// tree rooted at j; every tree of a forest carries a designated root.
inline ForestEnumeration enumerate_undirected_rooted_forests(const WeightedDigraph& g,
                                                             const Caps& caps = {}) {
    if (!g.undirected())
        throw precondition_error("undirected forest enumeration requires an undirected graph");
    const int n = g.order();
    const int m = static_cast<int>(g.arcs().size());
    if (n > caps.forest_vertex_cap || m > caps.forest_arc_cap || m >= 63)
        throw resource_error("forest enumeration cap exceeded");

    ForestEnumeration out{Rational(0), Matrix<Rational>(n), 0};
    std::vector<int> parent(n), size(n);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };

    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        std::fill(size.begin(), size.end(), 1);
        bool acyclic = true;
        Rational w(1);
        for (int e = 0; e < m && acyclic; ++e) {
            if (!(mask & (1ull << e))) continue;
            const Arc& edge = g.arcs()[e];
            int a = find(edge.tail), b = find(edge.head);
            if (a == b) { acyclic = false; break; }
            parent[a] = b;
            size[b] += size[a];
            w *= edge.weight;
        }
        if (!acyclic) continue;

        // rootings: one root per tree, chosen independently
        Rational all_rootings(1);
        for (int v = 0; v < n; ++v)
            if (find(v) == v) all_rootings *= size[v];
        out.f += w * all_rootings;
        out.count += 1; // unrooted forests enumerated
        for (int i = 0; i < n; ++i) {
            int ci = find(i);
            // fix j = root of i's tree, root the remaining trees freely
            Rational others = all_rootings / size[ci];
            for (int j = 0; j < n; ++j)
                if (find(j) == ci) out.fij(i, j) += w * others;
        }
    }
    return out;
}

/// Truncated route-weight series: partial sum of ((1+eps)^-1 P)^k for
/// k = 0..K, plus an entrywise geometric tail bound.
template <typename T>
std::pair<Matrix<T>, double> route_series(const WeightedDigraph& g, const Rational& eps,
                                          int terms) {
    const int n = g.order();
    Matrix<T> lap = laplacian<T>(g, LaplacianKind::row);
    Rational maxdiag(0);
    for (int i = 0; i < n; ++i) {
        Rational d(0);
        for (int j = 0; j < n; ++j)
            if (j != i) d += g.total_weight(i, j);
        if (d > maxdiag) maxdiag = d;
    }
    if (eps <= 0 || eps * maxdiag >= 1)
        throw precondition_error("epsilon out of range: requires eps * max out-weight < 1");

    T e = scalar_traits<T>::from_rational(eps);
    T damp = T(1) / (T(1) + e);
    Matrix<T> step = (Matrix<T>::identity(n) - lap.scaled(e)).scaled(damp);
    Matrix<T> sum = Matrix<T>::identity(n);
    Matrix<T> power = Matrix<T>::identity(n);
    for (int k = 1; k <= terms; ++k) {
        power = power * step;
        sum = sum + power;
    }
    // ||P||_inf = 1 (row stochastic), so entries of the k-th term are
    // bounded by (1+eps)^-k.
    double ratio = 1.0 / (1.0 + to_double(eps));
    double tail = std::pow(ratio, terms + 1) * n / (1.0 - ratio);
    return {std::move(sum), tail};
}

/// Connection reliability by inclusion-exclusion over the i->j path family.
inline Rational reliability_ie(const WeightedDigraph& g, int i, int j,
                               const Caps& caps = {}) {
    if (i == j) return Rational(1);
    for (const Arc& a : g.arcs())
        if (a.weight > 1)
            throw precondition_error("reliability requires arc weights in (0,1]");
    std::vector<Path> paths = enumerate_simple_paths(g, i, j, std::nullopt,
                                                     caps.path_vertex_cap);
    const int m = static_cast<int>(paths.size());
    if (m > caps.ie_path_cap || m >= 63)
        throw resource_error("inclusion-exclusion cap exceeded: " + std::to_string(m) +
                             " paths");
    Rational total(0);
    const int arcs = static_cast<int>(g.arcs().size());
    std::vector<bool> in_union(arcs);
    for (std::uint64_t family = 1; family < (1ull << m); ++family) {
        std::fill(in_union.begin(), in_union.end(), false);
        int members = 0;
        for (int p = 0; p < m; ++p) {
            if (!(family & (1ull << p))) continue;
            ++members;
            for (int idx : paths[p].arc_indices) in_union[idx] = true;
        }
        Rational w(1);
        for (int a = 0; a < arcs; ++a)
            if (in_union[a]) w *= g.arcs()[a].weight;
        if (members % 2 == 1)
            total += w;
        else
            total -= w;
    }
    return total;
}

/// Audit the transition inequality, the bottleneck identity (equality iff
/// one-way separation) and the diagonal-dominance pair bounds.
template <typename T>
AuditReport transitional_audit(const Matrix<T>& s, const WeightedDigraph& g,
                               double tol = 1e-9) {
    const int n = s.n();
    if (n != g.order())
        throw precondition_error("measure and graph dimension mismatch");
    AuditReport rep;
    rep.title = "transitional";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            // reciprocal pair bound, strict off the diagonal
            T lhs = s(i, j) * s(j, i);
            T rhs = s(i, i) * s(j, j);
            AuditCheck pair;
            pair.name = "pair-bound-strict";
            pair.indices = {i + 1, j + 1};
            pair.lhs = scalar_traits<T>::str(lhs);
            pair.rhs = scalar_traits<T>::str(rhs);
            pair.pass = detail::audit_leq(lhs, rhs, tol) && !detail::audit_equal(lhs, rhs, tol);
            rep.add(std::move(pair));
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                T tl = s(i, j) * s(j, k);
                T tr = s(i, k) * s(j, j);
                bool equal = detail::audit_equal(tl, tr, tol);
                bool sep = separates(g, i, j, k, SeparationMode::one_way);
                AuditCheck c;
                c.name = "transition";
                c.indices = {i + 1, j + 1, k + 1};
                c.lhs = scalar_traits<T>::str(tl);
                c.rhs = scalar_traits<T>::str(tr);
                c.separation = sep;
                c.pass = detail::audit_leq(tl, tr, tol) && (equal == sep);
                rep.add(std::move(c));
            }
        }
    return rep;
}

} // namespace geodist

#endif
