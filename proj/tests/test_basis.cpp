#include <doctest.h>

#include "caratheo/basis.hpp"

using namespace caratheo;

TEST_CASE("standard families have the expected sizes") {
    CHECK(Basis::fullDegree(2, 2).size() == 6);    // C(4,2)
    CHECK(Basis::fullDegree(1, 6).size() == 7);
    CHECK(Basis::homogeneous(3, 2).size() == 6);   // C(4,2)
    CHECK(Basis::homogeneous(2, 4).size() == 5);
    CHECK(Basis::homogeneous(3, 10).size() == 66);
    CHECK(Basis::gapped1D({0, 2, 3, 5, 6}).size() == 5);
}

TEST_CASE("monomials are ordered with the first variable dominant") {
    auto degTwo = monomialsOfDegree(2, 2);
    CHECK(degTwo == std::vector<Monomial>{{2, 0}, {1, 1}, {0, 2}});

    Basis b = Basis::homogeneous(2, 2);
    REQUIRE(b.size() == 3);
    CHECK(b.element(0).leadingTerm().first == Monomial{2, 0});
    CHECK(b.element(1).leadingTerm().first == Monomial{1, 1});
    CHECK(b.element(2).leadingTerm().first == Monomial{0, 2});
}

TEST_CASE("full-degree bases list lower degrees first") {
    Basis b = Basis::fullDegree(1, 2);
    REQUIRE(b.size() == 3);
    CHECK(b.element(0).degree() == 0);
    CHECK(b.element(1).degree() == 1);
    CHECK(b.element(2).degree() == 2);
}

TEST_CASE("homogeneous bases contain only forms of the stated degree") {
    Basis b = Basis::homogeneous(3, 6);
    for (const auto& f : b.elements()) {
        CHECK(f.isHomogeneous());
        CHECK(f.degree() == 6);
    }
    CHECK(b.isHomogeneousKind());
    CHECK(b.degree() == 6);
}

TEST_CASE("gapped one-variable bases validate their exponent lists") {
    Basis b = Basis::gapped1D({1, 2, 6});
    CHECK(b.variableCount() == 1);
    CHECK(b.exponents() == std::vector<int>{1, 2, 6});
    CHECK(b.element(2) == PolyQ::variable(1, 0, 6));
    CHECK_THROWS_AS(Basis::gapped1D({1, 1, 2}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::gapped1D({2, 1}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::gapped1D({-1, 0}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::gapped1D({}), DataIntegrityError);
}

TEST_CASE("custom bases must be linearly independent") {
    PolyQ x = PolyQ::variable(2, 0), y = PolyQ::variable(2, 1);
    CHECK_NOTHROW(Basis::custom(2, {x + y, x - y}));
    CHECK_THROWS_AS(Basis::custom(2, {x + y, x + y}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::custom(2, {x, y, x + y}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::custom(2, {PolyQ(2)}), DataIntegrityError);
    CHECK_THROWS_AS(Basis::custom(2, {PolyQ::variable(3, 0)}), DimensionError);
}

TEST_CASE("cached element derivatives are the exact partials") {
    Basis b = Basis::fullDegree(2, 2);
    const auto& d = b.elementDerivatives();
    REQUIRE(static_cast<int>(d.size()) == b.size());
    for (int j = 0; j < b.size(); ++j) {
        REQUIRE(d[j].size() == 2);
        for (int v = 0; v < 2; ++v) CHECK(d[j][v] == b.element(j).diff(v));
    }
}
