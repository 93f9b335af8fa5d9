#include <doctest.h>

#include <cmath>

#include "geodist/measures.hpp"
#include "geodist/oracle.hpp"
#include "support.hpp"

using namespace geodist;
using namespace geodist::testing;

TEST_CASE("forest enumeration fixtures") {
    SUBCASE("unit two-cycle") {
        auto e = enumerate_forests(unit_two_cycle(), ForestOrientation::in);
        CHECK(e.f == 3); // empty forest + each single arc
        CHECK(e.count == 3);
        CHECK(e.fij(0, 0) == 2);
        CHECK(e.fij(0, 1) == 1);
    }
    SUBCASE("unit directed three-cycle") {
        auto e = enumerate_forests(unit_three_cycle(), ForestOrientation::in);
        CHECK(e.f == 7);
        CHECK(e.fij(0, 0) == 4);
        CHECK(e.fij(0, 1) == 2);
        CHECK(e.fij(0, 2) == 1);
    }
    SUBCASE("single vertex") {
        auto e = enumerate_forests(WeightedDigraph(1, {}), ForestOrientation::in);
        CHECK(e.f == 1);
        CHECK(e.fij(0, 0) == 1);
    }
    SUBCASE("caps enforced") {
        Caps tight;
        tight.forest_arc_cap = 1;
        CHECK_THROWS_AS(enumerate_forests(unit_two_cycle(), ForestOrientation::in, tight),
                        resource_error);
    }
}

TEST_CASE("out enumeration is the reversed in enumeration transposed") {
    Rng rng(41);
    for (int t = 0; t < 15; ++t) {
        WeightedDigraph g = random_digraph(rng, 5, 8);
        auto out = enumerate_forests(g, ForestOrientation::out);
        auto rev = enumerate_forests(transform(g, TransformOp::reverse),
                                     ForestOrientation::in);
        CHECK(out.f == rev.f);
        CHECK(out.fij == rev.fij.transpose());
    }
}

TEST_CASE("forest matrix matches exhaustive enumeration") {
    Rng rng(42);
    for (int t = 0; t < 15; ++t) {
        WeightedDigraph g = random_digraph(rng, 5, 9);
        for (auto orientation : {ForestOrientation::in, ForestOrientation::out}) {
            auto closed = forest_matrix<Rational>(g, orientation);
            auto brute = enumerate_forests(g, orientation);
            CHECK(closed.values == brute.fij);
        }
    }
}

TEST_CASE("undirected rooted forests match the symmetrized digraph") {
    SUBCASE("path 1-2-3 fixture") {
        auto e = enumerate_undirected_rooted_forests(undirected_path3());
        CHECK(e.f == 8);
        CHECK(e.fij(0, 0) == 5);
        CHECK(e.fij(0, 1) == 2);
        CHECK(e.fij(0, 2) == 1);
        CHECK(e.fij(1, 1) == 4);
    }
    SUBCASE("random connected graphs") {
        Rng rng(43);
        for (int t = 0; t < 10; ++t) {
            WeightedDigraph g = random_connected_undirected(rng, 5, 2);
            auto undirected = enumerate_undirected_rooted_forests(g);
            auto directed = enumerate_forests(transform(g, TransformOp::symmetrize),
                                              ForestOrientation::in);
            CHECK(undirected.f == directed.f);
            CHECK(undirected.fij == directed.fij);
        }
    }
    SUBCASE("all labeled trees on four vertices have f agreeing both ways") {
        for (const WeightedDigraph& tree : all_labeled_trees(4)) {
            auto undirected = enumerate_undirected_rooted_forests(tree);
            auto matrix = forest_matrix<Rational>(transform(tree, TransformOp::symmetrize),
                                                  ForestOrientation::in);
            CHECK(undirected.fij == matrix.values);
        }
    }
    SUBCASE("directed input rejected") {
        CHECK_THROWS_AS(enumerate_undirected_rooted_forests(chain3()), precondition_error);
    }
}

TEST_CASE("route series") {
    WeightedDigraph g = unit_two_cycle();
    Rational eps(1, 2);
    SUBCASE("zero terms keep only the identity") {
        auto [sum, tail] = route_series<Rational>(g, eps, 0);
        CHECK(sum == Matrix<Rational>::identity(2));
        CHECK(tail > 0);
    }
    SUBCASE("truncation converges to the closed form") {
        auto closed = route_matrix<Rational>(g, eps);
        auto [sum, tail] = route_series<double>(g, eps, 80);
        CHECK(tail < 1e-9);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::fabs(sum(i, j) - to_double(closed.values(i, j))) <= tail + 1e-12);
    }
    SUBCASE("partial sums increase and stay below the closed form") {
        auto closed = route_matrix<Rational>(g, eps);
        Matrix<Rational> prev(2);
        for (int terms : {1, 4, 16}) {
            auto [sum, tail] = route_series<Rational>(g, eps, terms);
            (void)tail;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    CHECK(sum(i, j) >= prev(i, j));
                    CHECK(sum(i, j) <= closed.values(i, j));
                }
            prev = sum;
        }
    }
    SUBCASE("epsilon bound enforced") {
        CHECK_THROWS_AS(route_series<Rational>(g, Rational(2), 5), precondition_error);
    }
}

TEST_CASE("reliability by inclusion-exclusion") {
    SUBCASE("two parallel half arcs") {
        WeightedDigraph g(2, {{0, 1, Rational(1, 2)}, {0, 1, Rational(1, 2)}});
        // union weight 1/4 subtracted once: 1/2 + 1/2 - 1/4
        CHECK(reliability_ie(g, 0, 1) == Rational(3, 4));
        CHECK(reliability_ie(g, 0, 0) == 1);
        CHECK(reliability_ie(g, 1, 0) == 0);
    }
    SUBCASE("chain plus shortcut, all one-half") {
        WeightedDigraph g(3, {{0, 1, Rational(1, 2)},
                              {1, 2, Rational(1, 2)},
                              {0, 2, Rational(1, 2)}});
        CHECK(reliability_ie(g, 0, 2) == Rational(5, 8));
    }
    SUBCASE("matches the arc-state enumeration on random dags") {
        Rng rng(44);
        for (int t = 0; t < 12; ++t) {
            WeightedDigraph g = random_dag(rng, 5, 7, /*probability_weights=*/true);
            auto exact = reliability_exact<Rational>(g);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j)
                    CHECK(exact.values(i, j) == reliability_ie(g, i, j));
        }
    }
    SUBCASE("weights above one rejected") {
        CHECK_THROWS_AS(reliability_ie(WeightedDigraph(2, {{0, 1, 2}}), 0, 1),
                        precondition_error);
    }
}

TEST_CASE("transitional audit") {
    SUBCASE("forest matrix of the symmetrized path passes") {
        auto m = forest_matrix<Rational>(symmetrized_path3(), ForestOrientation::in);
        auto rep = transitional_audit(m.values, symmetrized_path3());
        CHECK(rep.passed());
        CHECK(rep.checks.size() == 6 + 6); // 6 ordered pairs, 6 ordered triples
    }
    SUBCASE("equality holds exactly through the cut vertex") {
        auto m = forest_matrix<Rational>(symmetrized_path3(), ForestOrientation::in);
        CHECK(m.values(0, 1) * m.values(1, 2) == m.values(0, 2) * m.values(1, 1));
    }
    SUBCASE("a constructed violation is reported") {
        Matrix<Rational> s = Matrix<Rational>::identity(2);
        s(0, 1) = 2;
        s(1, 0) = 2; // s_12 s_21 = 4 > 1 = s_11 s_22
        auto rep = transitional_audit(s, unit_two_cycle());
        CHECK_FALSE(rep.passed());
        bool pair_failed = false;
        for (const auto& c : rep.checks)
            if (c.name == "pair-bound-strict" && !c.pass) pair_failed = true;
        CHECK(pair_failed);
    }
    SUBCASE("undamped cycle accessibility fails the equality biconditional") {
        auto s = path_tau_matrix<Rational>(unit_three_cycle(), Rational(1));
        auto rep = transitional_audit(s.values, unit_three_cycle());
        CHECK_FALSE(rep.passed());
    }
    SUBCASE("float audit accepts values within tolerance") {
        auto exact = forest_matrix<Rational>(symmetrized_path3(), ForestOrientation::in);
        Matrix<double> s(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s(i, j) = to_double(exact.values(i, j));
        CHECK(transitional_audit(s, symmetrized_path3()).passed());
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(transitional_audit(Matrix<Rational>::identity(2), chain3()),
                        precondition_error);
    }
}
