#include <doctest.h>

#include <random>

#include "geodist/graph.hpp"
#include "geodist/matrix.hpp"
#include "support.hpp"

using namespace geodist;
using namespace geodist::testing;

namespace {

Matrix<Rational> random_integer_matrix(Rng& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix<Rational> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

Matrix<double> to_float(const Matrix<Rational>& m) {
    Matrix<double> f(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) f(i, j) = to_double(m(i, j));
    return f;
}

} // namespace

TEST_CASE("inversion fixtures") {
    Matrix<Rational> m(2);
    m(0, 0) = 2; m(0, 1) = -1;
    m(1, 0) = -1; m(1, 1) = 2;
    Matrix<Rational> inv = invert(m);
    CHECK(inv(0, 0) == Rational(2, 3));
    CHECK(inv(0, 1) == Rational(1, 3));
    CHECK(inv(1, 0) == Rational(1, 3));
    CHECK(inv(1, 1) == Rational(2, 3));

    CHECK(invert(Matrix<Rational>::identity(4)) == Matrix<Rational>::identity(4));

    Matrix<Rational> sing(2);
    sing(0, 0) = 1; sing(0, 1) = 1;
    sing(1, 0) = 1; sing(1, 1) = 1;
    CHECK_THROWS_AS(invert(sing), singular_error);
    CHECK(determinant(sing) == 0);

    Matrix<double> fsing(2);
    fsing(0, 0) = 1; fsing(0, 1) = 1;
    fsing(1, 0) = 1; fsing(1, 1) = 1 + 1e-16;
    CHECK_THROWS_AS(invert(fsing), singular_error);
}

TEST_CASE("determinant fixtures") {
    Matrix<Rational> m(2);
    m(0, 0) = 2; m(0, 1) = -1;
    m(1, 0) = -1; m(1, 1) = 2;
    CHECK(determinant(m) == 3);
    CHECK(determinant(Matrix<Rational>::identity(5)) == 1);

    // I + L for the unit directed 3-cycle
    Matrix<Rational> il = Matrix<Rational>::identity(3) +
                          laplacian<Rational>(unit_three_cycle(), LaplacianKind::row);
    CHECK(determinant(il) == 7);
}

TEST_CASE("exact inverse reproduces the identity") {
    Rng rng(2024);
    int tested = 0;
    while (tested < 1000) {
        int n = std::uniform_int_distribution<int>(1, 6)(rng);
        Matrix<Rational> m = random_integer_matrix(rng, n, -4, 4);
        if (determinant(m) == 0) continue;
        ++tested;
        auto [inv, det] = invert_with_det(m);
        CHECK(m * inv == Matrix<Rational>::identity(n));
        CHECK(det == determinant(m));
        CHECK(det * determinant(inv) == 1);
    }
}

TEST_CASE("float backend tracks the exact backend") {
    Rng rng(7);
    int tested = 0;
    while (tested < 200) {
        int n = std::uniform_int_distribution<int>(2, 8)(rng);
        Matrix<Rational> m = random_integer_matrix(rng, n, -5, 5);
        if (determinant(m) == 0) continue;
        Matrix<Rational> exact = invert(m);
        if (exact.max_abs() > 1000) continue; // skip ill-conditioned draws
        ++tested;
        Matrix<double> approx = invert(to_float(m));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double want = to_double(exact(i, j));
                double scale = std::max(std::fabs(want), 1.0);
                CHECK(std::fabs(approx(i, j) - want) <= 1e-9 * scale);
            }
    }
}
