#ifndef GEODIST_DISTANCES_HPP
#define GEODIST_DISTANCES_HPP

#include <cmath>
#include <optional>
#include <string>

#include "geodist/graph.hpp"
#include "geodist/matrix.hpp"
#include "geodist/measures.hpp"
#include "geodist/report.hpp"

namespace geodist {

/// Symmetric nonnegative distance matrix with zero diagonal. Keeps the
/// source measure so geodetic equality can be tested on exact products
/// instead of logs.
template <typename T>
struct DistanceMatrix {
    Matrix<double> values;
    std::optional<Matrix<T>> source; // the measure S this was derived from
    bool logarithmic = true;
    MeasureKind kind = MeasureKind::forest_in;
    std::optional<Rational> tau;
    std::optional<Rational> epsilon;

    /// Wrap an externally supplied distance matrix (no source measure).
    static DistanceMatrix raw(Matrix<double> d) {
        DistanceMatrix r;
        r.values = std::move(d);
        r.logarithmic = false;
        return r;
    }
};

/// d_ij = 1/2 ln(s_ii s_jj / (s_ij s_ji)). The log argument is formed
/// first (exactly, for rationals) and logged once per entry.
template <typename T>
DistanceMatrix<T> log_distance(const MeasureMatrix<T>& s) {
    const int n = s.values.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(s.values(i, j) > T(0)))
                throw domain_error("log distance requires positive entries; s(" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") = " + scalar_traits<T>::str(s.values(i, j)));
    DistanceMatrix<T> d;
    d.values = Matrix<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            T ratio = (s.values(i, i) * s.values(j, j)) / (s.values(i, j) * s.values(j, i));
            double v;
            if constexpr (scalar_traits<T>::exact)
                v = 0.5 * std::log(to_double(ratio));
            else
                v = 0.5 * std::log(ratio);
            d.values(i, j) = v;
            d.values(j, i) = v;
        }
    d.source = s.values;
    d.logarithmic = true;
    d.kind = s.kind;
    d.tau = s.tau;
    d.epsilon = s.epsilon;
    return d;
}

/// d_ij = 1/2 (s_ii + s_jj - s_ij - s_ji), valid under the diagonal
/// dominance conditions checked here.
template <typename T>
DistanceMatrix<T> plain_distance(const MeasureMatrix<T>& s) {
    const int n = s.values.n();
    for (int j = 0; j < n; ++j) {
        if (!(s.values(j, j) > T(0)))
            throw precondition_error("plain distance requires positive diagonal; s(" +
                                     std::to_string(j + 1) + "," + std::to_string(j + 1) +
                                     ") fails");
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const T& sjj = s.values(j, j);
            const T& sij = s.values(i, j);
            const T& sji = s.values(j, i);
            T lo = sij < sji ? sij : sji;
            T hi = sij < sji ? sji : sij;
            if (!(sjj > lo) || !(sjj >= hi))
                throw precondition_error(
                    "plain distance precondition fails at pair (" + std::to_string(i + 1) +
                    "," + std::to_string(j + 1) + "): diagonal s(" + std::to_string(j + 1) +
                    "," + std::to_string(j + 1) + ") = " + scalar_traits<T>::str(sjj) +
                    " does not dominate " + scalar_traits<T>::str(sij) + ", " +
                    scalar_traits<T>::str(sji));
        }
    }
    DistanceMatrix<T> d;
    d.values = Matrix<double>(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            T v = (s.values(i, i) + s.values(j, j) - s.values(i, j) - s.values(j, i)) / T(2);
            double dv;
            if constexpr (scalar_traits<T>::exact)
                dv = to_double(v);
            else
                dv = v;
            d.values(i, j) = dv;
            d.values(j, i) = dv;
        }
    d.source = s.values;
    d.logarithmic = false;
    d.kind = s.kind;
    d.tau = s.tau;
    d.epsilon = s.epsilon;
    return d;
}

/// Metric axioms: zero diagonal, positivity off the diagonal, symmetry,
/// and all n^3 triangle inequalities within tol.
template <typename T>
AuditReport metric_report(const DistanceMatrix<T>& d, double tol = 1e-9) {
    const int n = d.values.n();
    AuditReport rep;
    rep.title = "metric";
    for (int i = 0; i < n; ++i) {
        AuditCheck diag;
        diag.name = "zero-diagonal";
        diag.indices = {i + 1};
        diag.lhs = format_double(d.values(i, i));
        diag.rhs = "0";
        diag.pass = std::fabs(d.values(i, i)) <= tol;
        rep.add(std::move(diag));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            AuditCheck pos;
            pos.name = "positivity";
            pos.indices = {i + 1, j + 1};
            pos.lhs = format_double(d.values(i, j));
            pos.rhs = "0";
            pos.pass = d.values(i, j) > 0.0;
            rep.add(std::move(pos));
            if (i < j) {
                AuditCheck sym;
                sym.name = "symmetry";
                sym.indices = {i + 1, j + 1};
                sym.lhs = format_double(d.values(i, j));
                sym.rhs = format_double(d.values(j, i));
                sym.pass = std::fabs(d.values(i, j) - d.values(j, i)) <= tol;
                rep.add(std::move(sym));
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                AuditCheck tri;
                tri.name = "triangle";
                tri.indices = {i + 1, j + 1, k + 1};
                tri.lhs = format_double(d.values(i, j) + d.values(j, k));
                tri.rhs = format_double(d.values(i, k));
                tri.pass = d.values(i, j) + d.values(j, k) - d.values(i, k) >= -tol;
                rep.add(std::move(tri));
            }
    return rep;
}

namespace detail {

// Equality of d_ij + d_jk with d_ik, decided multiplicatively on the
// source measure when available.
template <typename T>
bool geodetic_equality(const DistanceMatrix<T>& d, int i, int j, int k, double tol) {
    if (d.source && d.logarithmic) {
        const Matrix<T>& s = *d.source;
        T lhs = s(j, j) * s(j, j) * s(i, k) * s(k, i);
        T rhs = s(i, j) * s(j, k) * s(k, j) * s(j, i);
        if constexpr (scalar_traits<T>::exact) {
            (void)tol;
            return lhs == rhs;
        } else {
            if (rhs == T(0)) return lhs == T(0);
            return std::fabs(static_cast<double>(lhs) / static_cast<double>(rhs) - 1.0) <= tol;
        }
    }
    if (d.source && !d.logarithmic) {
        const Matrix<T>& s = *d.source;
        // 2(d_ij + d_jk - d_ik) in the measure's own arithmetic
        T gap = (s(j, j) + s(i, k) - s(i, j) - s(j, k)) +
                (s(j, j) + s(k, i) - s(k, j) - s(j, i));
        if constexpr (scalar_traits<T>::exact) {
            (void)tol;
            return gap == T(0);
        } else {
            return std::fabs(static_cast<double>(gap)) <= tol;
        }
    }
    return std::fabs(d.values(i, j) + d.values(j, k) - d.values(i, k)) <= tol;
}

} // namespace detail

/// Geodetic biconditional: d_ij + d_jk = d_ik exactly when j separates
/// i and k (in the requested direction mode). Triples are ordered with
/// i, j, k pairwise distinct.
template <typename T>
AuditReport geodetic_report(const DistanceMatrix<T>& d, const WeightedDigraph& g,
                            SeparationMode mode, double tol = 1e-9) {
    const int n = d.values.n();
    if (n != g.order())
        throw precondition_error("distance and graph dimension mismatch");
    AuditReport rep;
    rep.title = "geodetic";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                bool equal = detail::geodetic_equality(d, i, j, k, tol);
                bool sep = separates(g, i, j, k, mode);
                AuditCheck c;
                c.name = "geodetic-triple";
                c.indices = {i + 1, j + 1, k + 1};
                c.lhs = format_double(d.values(i, j) + d.values(j, k));
                c.rhs = format_double(d.values(i, k));
                c.separation = sep;
                c.pass = equal == sep;
                rep.add(std::move(c));
            }
    return rep;
}

} // namespace geodist

#endif
