#ifndef GEODIST_TESTS_SUPPORT_HPP
#define GEODIST_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "geodist/graph.hpp"

namespace geodist::testing {

using Rng = std::mt19937_64;

// ---- fixtures -----------------------------------------------------------

inline WeightedDigraph unit_two_cycle() {
    return WeightedDigraph(2, {{0, 1, 1}, {1, 0, 1}});
}

inline WeightedDigraph unit_three_cycle() {
    return WeightedDigraph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
}

// undirected path 1-2-3, each edge stored once
inline WeightedDigraph undirected_path3() {
    return WeightedDigraph(3, {{0, 1, 1}, {1, 2, 1}}, /*undirected=*/true);
}

inline WeightedDigraph symmetrized_path3() {
    return transform(undirected_path3(), TransformOp::symmetrize);
}

inline WeightedDigraph chain3() { // 1 -> 2 -> 3
    return WeightedDigraph(3, {{0, 1, 1}, {1, 2, 1}});
}

// ---- random generators --------------------------------------------------

inline Rational random_weight(Rng& rng, int wmax) {
    return Rational(std::uniform_int_distribution<int>(1, wmax)(rng));
}

inline Rational random_probability(Rng& rng, bool allow_one) {
    static const Rational choices[] = {Rational(1, 2), Rational(3, 4), Rational(1)};
    int hi = allow_one ? 2 : 1;
    return choices[std::uniform_int_distribution<int>(0, hi)(rng)];
}

inline WeightedDigraph random_digraph(Rng& rng, int n, int arcs, int wmax = 3) {
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::vector<Arc> a;
    for (int k = 0; k < arcs; ++k) {
        int t = vertex(rng), h = vertex(rng);
        if (t == h) continue; // no loops
        a.push_back({t, h, random_weight(rng, wmax)});
    }
    return WeightedDigraph(n, std::move(a));
}

// Hamiltonian cycle on a random vertex order plus extra random arcs.
inline WeightedDigraph random_strong_digraph(Rng& rng, int n, int extra_arcs, int wmax = 3) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Arc> a;
    for (int k = 0; k < n; ++k)
        a.push_back({order[k], order[(k + 1) % n], random_weight(rng, wmax)});
    std::uniform_int_distribution<int> vertex(0, n - 1);
    for (int k = 0; k < extra_arcs; ++k) {
        int t = vertex(rng), h = vertex(rng);
        if (t == h) continue;
        a.push_back({t, h, random_weight(rng, wmax)});
    }
    return WeightedDigraph(n, std::move(a));
}

// Arcs only forward along a random topological order.
inline WeightedDigraph random_dag(Rng& rng, int n, int arcs, bool probability_weights,
                                  bool allow_one = true) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> vertex(0, n - 1);
    std::vector<Arc> a;
    for (int k = 0; k < arcs; ++k) {
        int i = vertex(rng), j = vertex(rng);
        if (i == j) continue;
        int t = order[std::min(i, j)], h = order[std::max(i, j)];
        a.push_back({t, h, probability_weights ? random_probability(rng, allow_one)
                                               : random_weight(rng, 3)});
    }
    return WeightedDigraph(n, std::move(a));
}

// Same arcs, weights replaced by survival probabilities.
inline WeightedDigraph with_probability_weights(Rng& rng, const WeightedDigraph& g,
                                                bool allow_one) {
    std::vector<Arc> a = g.arcs();
    for (Arc& arc : a) arc.weight = random_probability(rng, allow_one);
    return WeightedDigraph(g.order(), std::move(a), g.undirected(), g.allow_loops());
}

// ---- undirected families ------------------------------------------------

inline WeightedDigraph tree_from_pruefer(const std::vector<int>& code, int n) {
    std::vector<int> degree(n, 1);
    for (int v : code) ++degree[v];
    std::vector<Arc> edges;
    std::vector<bool> used(n, false);
    for (int v : code) {
        int leaf = -1;
        for (int u = 0; u < n; ++u)
            if (degree[u] == 1 && !used[u]) { leaf = u; break; }
        edges.push_back({leaf, v, 1});
        used[leaf] = true;
        --degree[leaf];
        --degree[v];
    }
    std::vector<int> last;
    for (int u = 0; u < n; ++u)
        if (degree[u] == 1 && !used[u]) last.push_back(u);
    edges.push_back({last[0], last[1], 1});
    return WeightedDigraph(n, std::move(edges), /*undirected=*/true);
}

inline std::vector<WeightedDigraph> all_labeled_trees(int n) {
    std::vector<WeightedDigraph> trees;
    if (n == 2) {
        trees.push_back(WeightedDigraph(2, {{0, 1, 1}}, true));
        return trees;
    }
    int len = n - 2;
    std::vector<int> code(len, 0);
    while (true) {
        trees.push_back(tree_from_pruefer(code, n));
        int pos = len - 1;
        while (pos >= 0 && code[pos] == n - 1) code[pos--] = 0;
        if (pos < 0) break;
        ++code[pos];
    }
    return trees;
}

inline WeightedDigraph undirected_cycle(int n) {
    std::vector<Arc> edges;
    for (int k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n, 1});
    return WeightedDigraph(n, std::move(edges), /*undirected=*/true);
}

// Random spanning tree plus extra edges; connected by construction.
inline WeightedDigraph random_connected_undirected(Rng& rng, int n, int extra_edges,
                                                   int wmax = 3) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Arc> edges;
    for (int k = 1; k < n; ++k) {
        int parent = order[std::uniform_int_distribution<int>(0, k - 1)(rng)];
        edges.push_back({parent, order[k], random_weight(rng, wmax)});
    }
    std::uniform_int_distribution<int> vertex(0, n - 1);
    for (int k = 0; k < extra_edges; ++k) {
        int a = vertex(rng), b = vertex(rng);
        if (a == b) continue;
        edges.push_back({a, b, random_weight(rng, wmax)});
    }
    return WeightedDigraph(n, std::move(edges), /*undirected=*/true);
}

} // namespace geodist::testing

#endif
