#include <doctest.h>

#include "geodist/graph.hpp"
#include "support.hpp"

using namespace geodist;
using namespace geodist::testing;

TEST_CASE("edge list parsing") {
    WeightedDigraph g = parse_graph("3\n1 2 1.0\n2 3 1.0", GraphFormat::edge_list);
    CHECK(g.order() == 3);
    REQUIRE(g.arcs().size() == 2);
    CHECK(g.arcs()[0].tail == 0);
    CHECK(g.arcs()[0].head == 1);
    CHECK(g.arcs()[0].weight == 1);
    CHECK(g.arcs()[1].tail == 1);
    CHECK(g.arcs()[1].head == 2);

    SUBCASE("comments, blank lines, rational weights") {
        WeightedDigraph h = parse_graph("2  # order\n\n1 2 3/7\n", GraphFormat::edge_list);
        CHECK(h.arcs()[0].weight == Rational(3, 7));
    }
    SUBCASE("non-positive weight names the line") {
        CHECK_THROWS_WITH_AS(parse_graph("2\n1 2 0.0", GraphFormat::edge_list),
                             doctest::Contains("line 2"), parse_error);
    }
    SUBCASE("vertex out of range") {
        CHECK_THROWS_AS(parse_graph("2\n1 3 1", GraphFormat::edge_list), parse_error);
    }
    SUBCASE("malformed line") {
        CHECK_THROWS_AS(parse_graph("2\n1 2", GraphFormat::edge_list), parse_error);
        CHECK_THROWS_AS(parse_graph("", GraphFormat::edge_list), parse_error);
    }
}

TEST_CASE("json parsing keeps parallel arcs") {
    WeightedDigraph g = parse_graph(
        R"({"n":2,"arcs":[{"from":1,"to":2,"w":0.5},{"from":1,"to":2,"w":0.5}]})",
        GraphFormat::json);
    CHECK(g.arcs().size() == 2);
    CHECK(g.total_weight(0, 1) == Rational(1));
    CHECK(parse_graph(R"({"n":2,"arcs":[],"undirected":true})", GraphFormat::json)
              .undirected());
    CHECK_THROWS_AS(parse_graph(R"({"n":2})", GraphFormat::json), parse_error);
    CHECK_THROWS_AS(parse_graph("{", GraphFormat::json), parse_error);
}

TEST_CASE("laplacian construction") {
    SUBCASE("two-cycle, row") {
        Matrix<Rational> l = laplacian<Rational>(unit_two_cycle(), LaplacianKind::row);
        CHECK(l(0, 0) == 1);
        CHECK(l(0, 1) == -1);
        CHECK(l(1, 0) == -1);
        CHECK(l(1, 1) == 1);
    }
    SUBCASE("single arc, row and column") {
        WeightedDigraph g(2, {{0, 1, 1}});
        Matrix<Rational> row = laplacian<Rational>(g, LaplacianKind::row);
        CHECK(row(0, 0) == 1);
        CHECK(row(0, 1) == -1);
        CHECK(row(1, 0) == 0);
        CHECK(row(1, 1) == 0);
        Matrix<Rational> col = laplacian<Rational>(g, LaplacianKind::column);
        CHECK(col(0, 0) == 0);
        CHECK(col(0, 1) == -1);
        CHECK(col(1, 1) == 1);
    }
    SUBCASE("loops rejected") {
        WeightedDigraph g(2, {{0, 0, 1}}, false, /*allow_loops=*/true);
        CHECK_THROWS_AS(laplacian<Rational>(g, LaplacianKind::row), precondition_error);
    }
    SUBCASE("row sums are exactly zero") {
        Rng rng(11);
        for (int t = 0; t < 25; ++t) {
            WeightedDigraph g = random_digraph(rng, 5, 10);
            Matrix<Rational> l = laplacian<Rational>(g, LaplacianKind::row);
            for (int i = 0; i < 5; ++i) {
                Rational sum(0);
                for (int j = 0; j < 5; ++j) sum += l(i, j);
                CHECK(sum == 0);
            }
        }
    }
}

TEST_CASE("transforms") {
    WeightedDigraph arc(2, {{0, 1, 1}});
    WeightedDigraph rev = transform(arc, TransformOp::reverse);
    CHECK(rev.arcs()[0].tail == 1);
    CHECK(rev.arcs()[0].head == 0);

    WeightedDigraph edge(2, {{0, 1, 3}}, true);
    WeightedDigraph sym = transform(edge, TransformOp::symmetrize);
    CHECK(sym.arcs().size() == 2);
    CHECK(sym.total_weight(0, 1) == 3);
    CHECK(sym.total_weight(1, 0) == 3);
    CHECK(sym.total_arc_weight() == 2 * edge.total_arc_weight());

    CHECK_THROWS_AS(transform(arc, TransformOp::symmetrize), precondition_error);

    SUBCASE("reverse is a weight-preserving involution") {
        Rng rng(5);
        for (int t = 0; t < 20; ++t) {
            WeightedDigraph g = random_digraph(rng, 5, 8);
            WeightedDigraph rr = transform(transform(g, TransformOp::reverse),
                                           TransformOp::reverse);
            CHECK(rr.total_arc_weight() == g.total_arc_weight());
            REQUIRE(rr.arcs().size() == g.arcs().size());
            for (size_t k = 0; k < g.arcs().size(); ++k) {
                CHECK(rr.arcs()[k].tail == g.arcs()[k].tail);
                CHECK(rr.arcs()[k].head == g.arcs()[k].head);
                CHECK(rr.arcs()[k].weight == g.arcs()[k].weight);
            }
        }
    }
}

TEST_CASE("separation queries") {
    WeightedDigraph chain = chain3();
    CHECK(separates(chain, 0, 1, 2, SeparationMode::one_way));
    CHECK(separates(chain, 0, 0, 2, SeparationMode::one_way)); // j == i
    WeightedDigraph cyc = unit_three_cycle();
    CHECK(separates(cyc, 0, 1, 2, SeparationMode::one_way));
    CHECK_FALSE(separates(cyc, 0, 1, 2, SeparationMode::either_direction)); // 3->1 avoids 2
    // unreachable pairs separate vacuously
    WeightedDigraph arc(3, {{0, 1, 1}});
    CHECK(separates(arc, 1, 2, 0, SeparationMode::one_way));
}

TEST_CASE("simple path enumeration") {
    WeightedDigraph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    auto paths = enumerate_simple_paths(g, 0, 2);
    REQUIRE(paths.size() == 2);
    // lexicographic by vertex sequence: [1,2,3] before [1,3]
    CHECK(paths[0].vertices == std::vector<int>{0, 1, 2});
    CHECK(paths[1].vertices == std::vector<int>{0, 2});
    CHECK(paths[0].length() == 2);

    auto trivial = enumerate_simple_paths(g, 0, 0);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].length() == 0);
    CHECK(trivial[0].weight == 1);

    CHECK(enumerate_simple_paths(unit_three_cycle(), 0, 2, 1).empty());

    SUBCASE("cap enforced") {
        CHECK_THROWS_AS(enumerate_simple_paths(g, 0, 2, std::nullopt, 2), resource_error);
    }
    SUBCASE("parallel arcs give distinct paths") {
        WeightedDigraph p(2, {{0, 1, Rational(1, 2)}, {0, 1, Rational(1, 3)}});
        auto pp = enumerate_simple_paths(p, 0, 1);
        REQUIRE(pp.size() == 2);
        CHECK(pp[0].weight + pp[1].weight == Rational(5, 6));
    }
}

TEST_CASE("separates agrees with exhaustive path search") {
    Rng rng(99);
    for (int t = 0; t < 60; ++t) {
        WeightedDigraph g = random_digraph(rng, 5, 9);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 5; ++k) {
                    bool by_reach = separates(g, i, j, k, SeparationMode::one_way);
                    bool by_paths = j == i || j == k ||
                                    enumerate_simple_paths(g, i, k).empty() ||
                                    enumerate_simple_paths(g, i, k, j).empty();
                    CHECK(by_reach == by_paths);
                }
    }
}
