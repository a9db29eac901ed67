#include <doctest.h>

#include "caratheo/boundstab.hpp"

using namespace caratheo;

TEST_CASE("zero-cap values") {
    CHECK(alpha(0) == 1);
    CHECK(alpha(2) == 1);
    CHECK(alpha(6) == 10);
    CHECK(alpha(10) == 31);
    CHECK_THROWS(alpha(5));
    CHECK_THROWS(alpha(-2));
}

TEST_CASE("cubature lower bound and its gap") {
    CHECK(moellerBound(1) == 1);
    CHECK(moellerBound(4) == 12);
    CHECK(moellerBound(6) == 24);

    auto ceilDiv = [](long long a, long long b) { return (a + b - 1) / b; };
    for (int k = 1; k <= 200; ++k) {
        long long dim = static_cast<long long>(k) * (2 * k + 1);  // C(2k+1, 2)
        long long third = ceilDiv(dim, 3);
        CHECK(moellerBound(k) <= third);
        if (k >= 4) {
            Rational gap(third - moellerBound(k));
            CHECK(gap >= moellerGapLower(k));
        }
    }
    // spot values of the gap chain
    CHECK(moellerGapLower(4) == 0);
    CHECK(moellerGapLower(6) == Rational(12, 6));
}

TEST_CASE("beta-maximum bound with default caps") {
    CHECK(betaMaxBound(0) == 2);
    CHECK(betaMaxBound(2) == 11);
    // supplying a smaller beta value can only lower the bound
    std::map<long long, long long> tighter = {{4, 5}};
    CHECK(betaMaxBound(2, tighter) <= betaMaxBound(2));
}

TEST_CASE("alpha-maximum bound collapses for large degrees") {
    CHECK(alphaMaxBound(2) == 8);
    CHECK(alphaMaxBound(3) == 14);
    CHECK(alphaMaxBound(10) == 137);
    for (int d = 5; d <= 500; ++d) CHECK(alphaMaxBound(d) == alpha(2 * d) + 1);
}

TEST_CASE("bound chain ordering") {
    std::vector<long long> rows;
    for (int d = 1; d <= 500; ++d) rows.push_back(2 * d);
    for (const auto& row : buildTable(rows)) {
        CAPTURE(row.twoD);
        CHECK(row.nLower <= row.maxFormula);
        CHECK(row.maxFormula <= row.alphaNext);
        CHECK(row.alphaNext < row.richterMinusOne);
        CHECK(row.richterMinusOne < row.richter);
    }
}

TEST_CASE("form-space dimensions and the quaternary quartic bound") {
    CHECK(homogeneousSize(3, 6) == 28);
    CHECK(homogeneousSize(4, 4) == 35);
    CHECK(homogeneousSize(4, 2) == 10);
    CHECK(caraB44Bound() == 26);
}

TEST_CASE("the reference table reproduces every printed row") {
    struct Row {
        long long twoD, nLower, richter, thm, alphaNext, maxF;
        long long known;  // -1 when absent
    };
    const std::vector<Row> expect = {
        {2, 3, 6, 5, 4, 4, 3},        {4, 6, 15, 14, 10, 8, 6},
        {6, 10, 28, 27, 19, 14, 11},  {8, 15, 45, 44, 31, 22, -1},
        {10, 22, 66, 65, 46, 32, -1}, {12, 31, 91, 90, 64, 47, -1},
        {14, 40, 120, 119, 85, 65, -1}, {16, 51, 153, 152, 109, 86, -1},
        {18, 64, 190, 189, 136, 110, -1}, {20, 77, 231, 230, 166, 137, -1},
        {40, 287, 861, 860, 631, 572, -1}, {100, 1717, 5151, 5150, 3826, 3677, -1},
        {1000, 167167, 501501, 501500, 375751, 374252, -1},
    };
    std::vector<long long> rows;
    for (const auto& r : expect) rows.push_back(r.twoD);
    auto table = buildTable(rows);
    REQUIRE(table.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CAPTURE(expect[i].twoD);
        CHECK(table[i].twoD == expect[i].twoD);
        CHECK(table[i].nLower == expect[i].nLower);
        CHECK(table[i].richter == expect[i].richter);
        CHECK(table[i].richterMinusOne == expect[i].thm);
        CHECK(table[i].alphaNext == expect[i].alphaNext);
        CHECK(table[i].maxFormula == expect[i].maxF);
        if (expect[i].known >= 0) {
            REQUIRE(table[i].known.has_value());
            CHECK(*table[i].known == expect[i].known);
            CHECK_FALSE(table[i].knownSource.empty());
        } else {
            CHECK_FALSE(table[i].known.has_value());
        }
    }
    CHECK_THROWS(buildTable({3}));
}
