#include <doctest.h>

#include <random>

#include "caratheo/io.hpp"

using namespace caratheo;

TEST_CASE("rational strings parse strictly and print canonically") {
    CHECK(parseRational("3/4") == Rational(3, 4));
    CHECK(parseRational("-7") == Rational(-7));
    CHECK(parseRational(" 5 / 10 ") == Rational(1, 2));
    CHECK(parseRational("+2") == Rational(2));
    CHECK_THROWS_AS(parseRational("1/0"), DataIntegrityError);
    CHECK_THROWS_AS(parseRational("abc"), DataIntegrityError);
    CHECK_THROWS_AS(parseRational("1.5"), DataIntegrityError);
    CHECK_THROWS_AS(parseRational(""), DataIntegrityError);

    CHECK(rationalToString(Rational(3, 4)) == "3/4");
    CHECK(rationalToString(Rational(-5)) == "-5");
    CHECK(rationalToString(Rational(6, 4)) == "3/2");
    for (int num = -6; num <= 6; ++num)
        for (int den = 1; den <= 5; ++den) {
            Rational r(num, den);
            CHECK(parseRational(rationalToString(r)) == r);
        }
}

TEST_CASE("polynomial text round trips exactly") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coeffNum(-9, 9), coeffDen(1, 4), expo(0, 4);
    for (int trial = 0; trial < 40; ++trial) {
        PolyQ p(2);
        for (int t = 0; t < 4; ++t)
            p.addTerm({expo(rng), expo(rng)},
                      Rational(coeffNum(rng), coeffDen(rng)));
        CHECK(parsePoly(polyToString(p), 2) == p);
    }
    CHECK(polyToString(PolyQ(3)) == "0");
    CHECK(parsePoly("0", 3) == PolyQ(3));
}

TEST_CASE("polynomial parser accepts common shorthand") {
    PolyQ x2 = PolyQ::monomial(2, {2, 0});
    CHECK(parsePoly("x1^2", 2) == x2);
    CHECK(parsePoly("1 * x1^2", 2) == x2);
    CHECK(parsePoly("x1 * x1", 2) == x2);
    CHECK(parsePoly("-x1 + x1 + x1^2", 2) == x2);
    CHECK(parsePoly("3/2 * x1 x2^2", 2) ==
          PolyQ::monomial(2, {1, 2}, Rational(3, 2)));
    // inferred variable count
    CHECK(parsePoly("x3").variableCount() == 3);
    CHECK_THROWS_AS(parsePoly("x3", 2), DimensionError);
    CHECK_THROWS_AS(parsePoly("1 +", 2), DataIntegrityError);
    CHECK_THROWS_AS(parsePoly("x0", 2), DataIntegrityError);
}

TEST_CASE("basis JSON round trips for every kind") {
    std::vector<Basis> bases = {
        Basis::fullDegree(2, 3),
        Basis::homogeneous(3, 4),
        Basis::gapped1D({0, 2, 3, 5, 6}),
        Basis::custom(2, {parsePoly("x1 + x2", 2), parsePoly("x1 - x2", 2)}),
    };
    for (const auto& b : bases) {
        Basis back = basisFromJson(basisToJson(b));
        CHECK(back.kind() == b.kind());
        CHECK(back.variableCount() == b.variableCount());
        REQUIRE(back.size() == b.size());
        for (int j = 0; j < b.size(); ++j)
            CHECK(back.element(j) == b.element(j));
    }
    CHECK_THROWS_AS(basisFromJson({{"kind", "mystery"}, {"n", 2}}),
                    DataIntegrityError);
}

TEST_CASE("gapped exponent lists accept flat and nested JSON forms") {
    nlohmann::json flat = {{"kind", "gapped1d"}, {"exponents", {0, 2, 5}}};
    nlohmann::json nested = {{"kind", "gapped1d"},
                             {"exponents", {{0}, {2}, {5}}}};
    CHECK(basisFromJson(flat).exponents() == std::vector<int>{0, 2, 5});
    CHECK(basisFromJson(nested).exponents() == std::vector<int>{0, 2, 5});
}

TEST_CASE("measure and sequence JSON round trips") {
    AtomicMeasure mu{{1.5, 0.25}, {{0.5, -1.0}, {2.0, 3.0}}, true};
    AtomicMeasure back = measureFromJson(measureToJson(mu));
    CHECK(back.weights == mu.weights);
    CHECK(back.points == mu.points);
    CHECK(back.isSigned == mu.isSigned);

    // rational strings are accepted on input
    nlohmann::json j = {{"atoms", {{{"w", "1/2"}, {"x", {"3/4"}}}}}};
    AtomicMeasure r = measureFromJson(j);
    CHECK(r.weights == std::vector<double>{0.5});
    CHECK(r.points[0][0] == 0.75);

    MomentSeq s{Basis::fullDegree(1, 2), {1.0, 0.0, 1.0}};
    MomentSeq sb = momentSeqFromJson(momentSeqToJson(s));
    CHECK(sb.values == s.values);
    CHECK(sb.basis.size() == s.basis.size());

    nlohmann::json bad = momentSeqToJson(s);
    bad["values"] = {1.0};
    CHECK_THROWS_AS(momentSeqFromJson(bad), DataIntegrityError);
}

TEST_CASE("shorthand basis specifiers") {
    CHECK(parseBasisSpec("full:2:3").size() == Basis::fullDegree(2, 3).size());
    CHECK(parseBasisSpec("hom:3:4").kind() == BasisKind::Homogeneous);
    CHECK(parseBasisSpec("gapped1d:0,2,3,5,6").exponents() ==
          std::vector<int>{0, 2, 3, 5, 6});
    CHECK_THROWS_AS(parseBasisSpec("no/such/file.json"), DataIntegrityError);
}
