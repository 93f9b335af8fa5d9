#ifndef GEODIST_GRAPH_HPP
#define GEODIST_GRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "geodist/matrix.hpp"
#include "geodist/rational.hpp"

namespace geodist {

/// Enumeration caps for the exhaustive operations. Overridable via the
/// GEODIST_CAPS mechanism in the CLI.
struct Caps {
    int path_vertex_cap = 12;    // simple-path enumeration
    int reliability_arc_cap = 20; // 2^m arc-subset enumeration
    int ie_path_cap = 15;        // inclusion-exclusion path families
    int forest_vertex_cap = 8;   // forest enumeration
    int forest_arc_cap = 16;
};

/// One arc of a multidigraph. Vertices are 0-based internally; all I/O is
/// 1-based.
struct Arc {
    int tail;
    int head;
    Rational weight;
};

enum class GraphFormat { edge_list, json };
enum class LaplacianKind { row, column };
enum class TransformOp { reverse, symmetrize };
enum class SeparationMode { one_way, either_direction };

/// Weighted directed multigraph. Immutable after construction.
class WeightedDigraph {
public:
    WeightedDigraph(int n, std::vector<Arc> arcs, bool undirected = false,
                    bool allow_loops = false);

    int order() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    bool undirected() const { return undirected_; }
    bool allow_loops() const { return allow_loops_; }
    bool has_loops() const;

    /// Collapsed total arc weight w_ij (sum over parallel arcs).
    Rational total_weight(int tail, int head) const;

    /// Sum of all arc weights.
    Rational total_arc_weight() const;

    /// Arc indices grouped by tail, sorted by head then input order.
    const std::vector<std::vector<int>>& out_arcs() const { return out_; }

private:
    int n_;
    std::vector<Arc> arcs_;
    bool undirected_;
    bool allow_loops_;
    std::vector<std::vector<int>> out_;
};

/// A simple path: distinct vertices, one concrete arc per step (parallel
/// arcs give distinct paths).
struct Path {
    std::vector<int> vertices;
    std::vector<int> arc_indices;
    Rational weight;

    int length() const { return static_cast<int>(arc_indices.size()); }
};

WeightedDigraph parse_graph(const std::string& text, GraphFormat format);

WeightedDigraph transform(const WeightedDigraph& g, TransformOp op);

/// Vertices reachable from `from` by directed paths, optionally with one
/// vertex deleted. reachable[from] is always true (unless from == exclude).
std::vector<bool> reachable_set(const WeightedDigraph& g, int from, int exclude = -1);

/// Does every i->k path contain j? Pairs with no i->k path at all count as
/// separated (vacuous truth); geodetic audits restrict to strong digraphs.
bool separates(const WeightedDigraph& g, int i, int j, int k, SeparationMode mode);

/// All simple i->k paths avoiding `exclude`, lexicographic by vertex
/// sequence. Includes the zero-length path when i == k.
std::vector<Path> enumerate_simple_paths(const WeightedDigraph& g, int i, int k,
                                         std::optional<int> exclude = std::nullopt,
                                         int vertex_cap = Caps{}.path_vertex_cap);

/// Laplacian with collapsed weights; row kind sums out-weights on the
/// diagonal, column kind in-weights. Off-diagonals are -w_ij either way.
template <typename T>
Matrix<T> laplacian(const WeightedDigraph& g, LaplacianKind kind) {
    if (g.has_loops())
        throw precondition_error("laplacian requires a loop-free graph");
    const int n = g.order();
    Matrix<T> l(n);
    for (const Arc& a : g.arcs()) {
        T w = scalar_traits<T>::from_rational(a.weight);
        l(a.tail, a.head) -= w;
        if (kind == LaplacianKind::row)
            l(a.tail, a.tail) += w;
        else
            l(a.head, a.head) += w;
    }
    return l;
}

} // namespace geodist

#endif
