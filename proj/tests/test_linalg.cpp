#include <doctest.h>

#include <random>

#include "caratheo/linalg.hpp"

using namespace caratheo;

namespace {

// cofactor-expansion oracle for small polynomial matrices
PolyQ detCofactor(const Matrix<PolyQ>& m) {
    const std::size_t n = m.size();
    const int nv = m[0][0].variableCount();
    if (n == 1) return m[0][0];
    PolyQ acc(nv);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<PolyQ> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<PolyQ> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        PolyQ term = m[0][j] * detCofactor(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Matrix<Rational> randomRationalMatrix(std::mt19937_64& rng, int rows, int cols) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    Matrix<Rational> m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
        for (auto& e : row) e = Rational(num(rng), den(rng));
    return m;
}

Matrix<Rational> transpose(const Matrix<Rational>& m) {
    Matrix<Rational> t(m[0].size(), std::vector<Rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

}  // namespace

TEST_CASE("exact determinants of small constant matrices") {
    auto c = [](int v) { return PolyQ::constant(2, v); };
    CHECK(detExact(Matrix<PolyQ>{{c(1), c(0)}, {c(0), c(1)}}) == c(1));
    CHECK(detExact(Matrix<Rational>{{1, 2}, {3, 4}}) == Rational(-2));
    CHECK(detExact(Matrix<Rational>{{1, 2}, {2, 4}}) == Rational(0));
    CHECK_THROWS_AS(detExact(Matrix<Rational>{{1, 2}}), DimensionError);
}

TEST_CASE("two-point Vandermonde determinant") {
    PolyQ one = PolyQ::constant(2, 1);
    PolyQ x1 = PolyQ::variable(2, 0), x2 = PolyQ::variable(2, 1);
    CHECK(detExact(Matrix<PolyQ>{{one, one}, {x1, x2}}) == x2 - x1);
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion up to 4x4") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coeff(-3, 3), expo(0, 2);
    for (int size = 2; size <= 4; ++size) {
        for (int trial = 0; trial < 8; ++trial) {
            Matrix<PolyQ> m(size, std::vector<PolyQ>(size, PolyQ(2)));
            for (auto& row : m)
                for (auto& e : row) {
                    for (int t = 0; t < 2; ++t) {
                        Monomial mo = {expo(rng), expo(rng)};
                        e.addTerm(std::move(mo), Rational(coeff(rng)));
                    }
                }
            CHECK(detExact(m) == detCofactor(m));
        }
    }
}

TEST_CASE("exact rank basics") {
    CHECK(rankExact(Matrix<Rational>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
    CHECK(rankExact(Matrix<Rational>{{1, 2}, {2, 4}}) == 1);
    CHECK(rankExact(Matrix<Rational>{{0, 0}, {0, 0}}) == 0);
    // wide and tall shapes
    CHECK(rankExact(Matrix<Rational>{{1, 2, 3}}) == 1);
    CHECK(rankExact(Matrix<Rational>{{1}, {2}, {3}}) == 1);
}

TEST_CASE("rank equals rank of the transpose on random matrices") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = randomRationalMatrix(rng, 4 + trial % 7, 3 + trial % 5);
        CHECK(rankExact(m) == rankExact(transpose(m)));
    }
}

TEST_CASE("rank detects planted rank deficiency") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        // outer-product construction: rank exactly 2 (generically)
        auto u = randomRationalMatrix(rng, 2, 6), v = randomRationalMatrix(rng, 2, 5);
        Matrix<Rational> m(6, std::vector<Rational>(5, 0));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 5; ++j)
                for (int r = 0; r < 2; ++r) m[i][j] += u[r][i] * v[r][j];
        int rk = rankExact(m);
        CHECK(rk <= 2);
        CHECK(rankFloat(toDoubleMatrix(m)) == rk);
    }
}

TEST_CASE("float rank via singular values matches exact rank") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 15; ++trial) {
        auto m = randomRationalMatrix(rng, 5, 5);
        CHECK(rankFloat(toDoubleMatrix(m)) == rankExact(m));
    }
}

TEST_CASE("rank over the quadratic extension") {
    QuadExt r2(0, 1);
    // rows (1, sqrt2) and (sqrt2, 2) are proportional
    Matrix<QuadExt> dep{{QuadExt(1), r2}, {r2, QuadExt(2)}};
    CHECK(rankExact(dep) == 1);
    Matrix<QuadExt> indep{{QuadExt(1), r2}, {r2, QuadExt(3)}};
    CHECK(rankExact(indep) == 2);
    CHECK(rankFloat(toDoubleMatrix(indep)) == 2);
}
