#include "geodist/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

namespace geodist {

WeightedDigraph::WeightedDigraph(int n, std::vector<Arc> arcs, bool undirected,
                                 bool allow_loops)
    : n_(n), arcs_(std::move(arcs)), undirected_(undirected), allow_loops_(allow_loops) {
    if (n_ < 1)
        throw precondition_error("vertex count must be positive");
    for (size_t idx = 0; idx < arcs_.size(); ++idx) {
        const Arc& a = arcs_[idx];
        if (a.tail < 0 || a.tail >= n_ || a.head < 0 || a.head >= n_)
            throw precondition_error("arc " + std::to_string(idx + 1) +
                                     ": vertex index out of range");
        if (a.tail == a.head && !allow_loops_)
            throw precondition_error("arc " + std::to_string(idx + 1) +
                                     ": loop not allowed");
        if (a.weight <= 0)
            throw precondition_error("arc " + std::to_string(idx + 1) +
                                     ": non-positive weight");
    }
    out_.assign(n_, {});
    for (int idx = 0; idx < static_cast<int>(arcs_.size()); ++idx)
        out_[arcs_[idx].tail].push_back(idx);
    for (auto& lst : out_)
        std::stable_sort(lst.begin(), lst.end(),
                         [&](int a, int b) { return arcs_[a].head < arcs_[b].head; });
}

bool WeightedDigraph::has_loops() const {
    for (const Arc& a : arcs_)
        if (a.tail == a.head) return true;
    return false;
}

Rational WeightedDigraph::total_weight(int tail, int head) const {
    Rational w(0);
    for (int idx : out_[tail])
        if (arcs_[idx].head == head) w += arcs_[idx].weight;
    return w;
}

Rational WeightedDigraph::total_arc_weight() const {
    Rational w(0);
    for (const Arc& a : arcs_) w += a.weight;
    return w;
}

namespace {

WeightedDigraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue; // blank line
        if (n < 0) {
            try {
                n = std::stoi(tok);
            } catch (...) {
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected vertex count");
            }
            std::string extra;
            if (ls >> extra)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": trailing tokens after vertex count");
            if (n < 1)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": vertex count must be positive");
            continue;
        }
        std::string head_tok, weight_tok, extra;
        if (!(ls >> head_tok >> weight_tok) || (ls >> extra))
            throw parse_error("line " + std::to_string(lineno) +
                              ": expected 'tail head weight'");
        int tail, head;
        try {
            tail = std::stoi(tok);
            head = std::stoi(head_tok);
        } catch (...) {
            throw parse_error("line " + std::to_string(lineno) + ": malformed vertex index");
        }
        if (tail < 1 || tail > n || head < 1 || head > n)
            throw parse_error("line " + std::to_string(lineno) +
                              ": vertex index out of range 1.." + std::to_string(n));
        Rational w;
        try {
            w = parse_rational(weight_tok);
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (w <= 0)
            throw parse_error("line " + std::to_string(lineno) + ": non-positive weight");
        arcs.push_back({tail - 1, head - 1, std::move(w)});
    }
    if (n < 0)
        throw parse_error("empty input: expected vertex count on the first line");
    return WeightedDigraph(n, std::move(arcs));
}

Rational weight_from_json(const nlohmann::json& v) {
    // Numbers go through their textual form so that decimal literals
    // convert exactly; strings may carry "p/q".
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number())
        return parse_rational(v.dump());
    throw parse_error("arc weight must be a number or a string");
}

WeightedDigraph parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("arcs"))
        throw parse_error("graph JSON requires fields 'n' and 'arcs'");
    int n = j.at("n").get<int>();
    bool undirected = j.value("undirected", false);
    bool allow_loops = j.value("allow_loops", false);
    std::vector<Arc> arcs;
    int idx = 0;
    for (const auto& a : j.at("arcs")) {
        ++idx;
        if (!a.is_object() || !a.contains("from") || !a.contains("to") || !a.contains("w"))
            throw parse_error("arc " + std::to_string(idx) +
                              ": requires fields 'from', 'to', 'w'");
        int tail = a.at("from").get<int>();
        int head = a.at("to").get<int>();
        if (tail < 1 || tail > n || head < 1 || head > n)
            throw parse_error("arc " + std::to_string(idx) + ": vertex index out of range");
        Rational w = weight_from_json(a.at("w"));
        if (w <= 0)
            throw parse_error("arc " + std::to_string(idx) + ": non-positive weight");
        arcs.push_back({tail - 1, head - 1, std::move(w)});
    }
    return WeightedDigraph(n, std::move(arcs), undirected, allow_loops);
}

} // namespace

WeightedDigraph parse_graph(const std::string& text, GraphFormat format) {
    return format == GraphFormat::edge_list ? parse_edge_list(text) : parse_json(text);
}

WeightedDigraph transform(const WeightedDigraph& g, TransformOp op) {
    std::vector<Arc> arcs;
    switch (op) {
    case TransformOp::reverse:
        arcs.reserve(g.arcs().size());
        for (const Arc& a : g.arcs()) arcs.push_back({a.head, a.tail, a.weight});
        return WeightedDigraph(g.order(), std::move(arcs), g.undirected(), g.allow_loops());
    case TransformOp::symmetrize:
        if (!g.undirected())
            throw precondition_error("symmetrize requires an undirected input graph");
        arcs.reserve(2 * g.arcs().size());
        for (const Arc& a : g.arcs()) {
            arcs.push_back({a.tail, a.head, a.weight});
            arcs.push_back({a.head, a.tail, a.weight});
        }
        return WeightedDigraph(g.order(), std::move(arcs), false, g.allow_loops());
    }
    throw precondition_error("unknown transform");
}

std::vector<bool> reachable_set(const WeightedDigraph& g, int from, int exclude) {
    std::vector<bool> seen(g.order(), false);
    if (from == exclude) return seen;
    seen[from] = true;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int idx : g.out_arcs()[v]) {
            int h = g.arcs()[idx].head;
            if (h == exclude || seen[h]) continue;
            seen[h] = true;
            queue.push_back(h);
        }
    }
    return seen;
}

namespace {

bool separates_one_way(const WeightedDigraph& g, int i, int j, int k) {
    if (j == i || j == k) return true;
    if (!reachable_set(g, i)[k]) return true; // no i->k path at all
    return !reachable_set(g, i, j)[k];
}

} // namespace

bool separates(const WeightedDigraph& g, int i, int j, int k, SeparationMode mode) {
    if (mode == SeparationMode::one_way) return separates_one_way(g, i, j, k);
    return separates_one_way(g, i, j, k) && separates_one_way(g, k, j, i);
}

std::vector<Path> enumerate_simple_paths(const WeightedDigraph& g, int i, int k,
                                         std::optional<int> exclude, int vertex_cap) {
    if (g.order() > vertex_cap)
        throw resource_error("path enumeration cap exceeded: n=" +
                             std::to_string(g.order()) + " > " + std::to_string(vertex_cap));
    std::vector<Path> result;
    int excl = exclude.value_or(-1);
    if (i == excl || k == excl) return result;

    std::vector<bool> visited(g.order(), false);
    Path current;
    current.vertices.push_back(i);
    current.weight = 1;
    visited[i] = true;

    // DFS over arcs sorted by head; parallel arcs stay distinct in input order.
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == k) {
            result.push_back(current);
            return;
        }
        for (int idx : g.out_arcs()[v]) {
            const Arc& a = g.arcs()[idx];
            if (a.head == excl || visited[a.head]) continue;
            visited[a.head] = true;
            current.vertices.push_back(a.head);
            current.arc_indices.push_back(idx);
            current.weight *= a.weight;
            self(self, a.head);
            current.weight /= a.weight;
            current.arc_indices.pop_back();
            current.vertices.pop_back();
            visited[a.head] = false;
        }
    };
    dfs(dfs, i);
    return result;
}

} // namespace geodist
