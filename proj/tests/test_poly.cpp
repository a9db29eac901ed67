#include <doctest.h>

#include <random>

#include "caratheo/poly.hpp"

using namespace caratheo;

namespace {

PolyQ randomPoly(std::mt19937_64& rng, int n, int maxDeg, int terms) {
    std::uniform_int_distribution<int> coeff(-5, 5), expo(0, maxDeg);
    PolyQ p(n);
    for (int t = 0; t < terms; ++t) {
        Monomial m(n);
        for (int i = 0; i < n; ++i) m[i] = expo(rng);
        p.addTerm(std::move(m), Rational(coeff(rng)));
    }
    return p;
}

std::vector<Rational> randomPoint(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
    std::vector<Rational> x;
    for (int i = 0; i < n; ++i) x.emplace_back(num(rng), den(rng));
    return x;
}

}  // namespace

TEST_CASE("evaluation, differentiation, multiplication basics") {
    // x1^2 + x2 at (2, 3)
    PolyQ p(2);
    p.addTerm({2, 0}, 1);
    p.addTerm({0, 1}, 1);
    CHECK(p.eval({Rational(2), Rational(3)}) == 7);

    // d/dx x^3 = 3 x^2
    PolyQ cube = PolyQ::variable(1, 0, 3);
    PolyQ expect = PolyQ::monomial(1, {2}, Rational(3));
    CHECK(cube.diff(0) == expect);

    // (x - y)(x + y) = x^2 - y^2
    PolyQ x = PolyQ::variable(2, 0), y = PolyQ::variable(2, 1);
    PolyQ lhs = (x - y) * (x + y);
    PolyQ rhs = x * x - y * y;
    CHECK(lhs == rhs);
}

TEST_CASE("graded lexicographic term order with the first variable dominant") {
    PolyQ p(2);
    p.addTerm({2, 0}, 1);  // x1^2
    p.addTerm({1, 1}, 1);  // x1 x2
    p.addTerm({0, 2}, 1);  // x2^2
    p.addTerm({0, 0}, 1);  // 1
    std::vector<Monomial> order;
    for (const auto& [m, c] : p.terms()) order.push_back(m);
    CHECK(order == std::vector<Monomial>{{0, 0}, {0, 2}, {1, 1}, {2, 0}});
    CHECK(p.leadingTerm().first == Monomial{2, 0});
    CHECK(p.degree() == 2);
    CHECK_FALSE(p.isHomogeneous());
}

TEST_CASE("zero coefficients are never stored") {
    PolyQ p(1);
    p.addTerm({1}, 2);
    p.addTerm({1}, -2);
    CHECK(p.isZero());
    CHECK(p.termCount() == 0);
    CHECK(p.degree() == -1);
}

TEST_CASE("exact division recovers cofactors and rejects non-divisors") {
    PolyQ x = PolyQ::variable(2, 0), y = PolyQ::variable(2, 1);
    CHECK(polyDivExact(x * x - y * y, x - y) == x + y);

    PolyQ xp1 = PolyQ::variable(1, 0, 2) + PolyQ::constant(1, 1);  // x^2 + 1
    PolyQ xm1 = PolyQ::variable(1, 0) - PolyQ::constant(1, 1);     // x - 1
    CHECK_THROWS_AS(polyDivExact(xp1, xm1), DivisibilityError);
    CHECK_THROWS_AS(polyDivExact(xp1, PolyQ(1)), DivisibilityError);
}

TEST_CASE("evaluation is a ring homomorphism on random inputs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        PolyQ p = randomPoly(rng, 2, 3, 4), q = randomPoly(rng, 2, 3, 4);
        auto x = randomPoint(rng, 2);
        CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
        CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
    }
}

TEST_CASE("divide after multiply is the identity on random inputs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        PolyQ p = randomPoly(rng, 2, 3, 4), d = randomPoly(rng, 2, 2, 3);
        if (d.isZero()) continue;
        CHECK(polyDivExact(p * d, d) == p);
    }
}

TEST_CASE("derivative obeys the product rule exactly") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        PolyQ p = randomPoly(rng, 2, 3, 4), q = randomPoly(rng, 2, 3, 4);
        for (int v = 0; v < 2; ++v)
            CHECK((p * q).diff(v) == p.diff(v) * q + p * q.diff(v));
    }
}

TEST_CASE("substitution composes with evaluation") {
    // p(x, y) = x^2 y, substitute x -> u + v, y -> u v
    PolyQ p(2);
    p.addTerm({2, 1}, 1);
    PolyQ u = PolyQ::variable(2, 0), v = PolyQ::variable(2, 1);
    PolyQ sub = p.substitute({u + v, u * v});
    std::vector<Rational> pt = {Rational(2), Rational(3)};
    CHECK(sub.eval(pt) == Rational(5 * 5 * 6));
}

TEST_CASE("variable-count mismatches are rejected") {
    PolyQ p(2), q(3);
    CHECK_THROWS_AS(p + q, DimensionError);
    CHECK_THROWS_AS(p * q, DimensionError);
    CHECK_THROWS_AS(p.eval({Rational(1)}), DimensionError);
    CHECK_THROWS_AS(p.diff(2), DimensionError);
}

TEST_CASE("arithmetic in the quadratic extension of the rationals") {
    QuadExt r(0, 1);  // sqrt(2)
    CHECK(r * r == QuadExt(2));
    QuadExt a(1, 1), b(1, -1);  // 1 + sqrt2, 1 - sqrt2
    CHECK(a * b == QuadExt(-1));
    CHECK(a / a == QuadExt(1));
    CHECK((a / b) * b == a);
    CHECK_THROWS(a / QuadExt(0));
    CHECK(toDouble(a) == doctest::Approx(1 + 1.4142135623730951));
}

TEST_CASE("polynomials over the quadratic extension evaluate exactly") {
    // (x - sqrt2)(x + sqrt2) = x^2 - 2 vanishes at sqrt2
    PolyQ2 p(1);
    p.addTerm({2}, QuadExt(1));
    p.addTerm({0}, QuadExt(-2));
    CHECK(p.eval({QuadExt(0, 1)}).isZero());
    CHECK(p.eval({QuadExt(2)}) == QuadExt(2));
}
