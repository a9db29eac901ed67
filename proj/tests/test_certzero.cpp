#include <doctest.h>

#include <set>

#include "caratheo/certzero.hpp"

using namespace caratheo;

TEST_CASE("builtin nonnegative forms carry their full zero lists") {
    auto motzkin = builtinPolynomial("motzkin");
    CHECK(motzkin.polynomial.degree() == 6);
    CHECK(motzkin.zeros.size() == 6);

    auto robinson = builtinPolynomial("robinson");
    CHECK(robinson.polynomial.degree() == 6);
    CHECK(robinson.zeros.size() == 10);

    auto harris = builtinPolynomial("harris");
    CHECK(harris.polynomial.degree() == 10);
    CHECK(harris.zeros.size() == 30);

    CHECK_THROWS(builtinPolynomial("unknown"));
}

TEST_CASE("every stored zero annihilates its polynomial exactly") {
    for (const char* name : {"motzkin", "robinson", "harris"}) {
        CAPTURE(name);
        auto p = builtinPolynomial(name);
        // coefficients are rational, zeros may involve sqrt 2
        PolyQ2 lifted(p.polynomial.variableCount());
        for (const auto& [m, c] : p.polynomial.terms())
            lifted.addTerm(m, QuadExt(c));
        for (const auto& z : p.zeros) CHECK(lifted.eval(z).isZero());
    }
}

TEST_CASE("zero representatives are canonical and projectively distinct") {
    for (const char* name : {"motzkin", "robinson", "harris"}) {
        CAPTURE(name);
        auto p = builtinPolynomial(name);
        for (std::size_t a = 0; a < p.zeros.size(); ++a) {
            // first nonzero coordinate positive
            for (const auto& c : p.zeros[a]) {
                if (c.isZero()) continue;
                CHECK(toDouble(c) > 0);
                break;
            }
            // no two representatives are scalar multiples: cross-product test
            for (std::size_t b = a + 1; b < p.zeros.size(); ++b) {
                const auto &u = p.zeros[a], &v = p.zeros[b];
                bool proportional = true;
                for (std::size_t i = 0; i < u.size() && proportional; ++i)
                    for (std::size_t j = i + 1; j < u.size(); ++j)
                        if (!(u[i] * v[j] - u[j] * v[i]).isZero()) {
                            proportional = false;
                            break;
                        }
                CHECK_FALSE(proportional);
            }
        }
    }
}

TEST_CASE("Motzkin zeros are the six printed points") {
    auto p = builtinPolynomial("motzkin");
    std::set<std::vector<double>> got;
    for (const auto& z : p.zeros) {
        std::vector<double> v;
        for (const auto& c : z) v.push_back(toDouble(c));
        got.insert(v);
    }
    std::set<std::vector<double>> expect = {
        {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}, {1, 0, 0}, {0, 1, 0}};
    CHECK(got == expect);
}

TEST_CASE("independence certificate on the seven-element degree-six basis") {
    Basis b = motzkinExampleBasis();
    CHECK(b.size() == 7);
    ZeroCertificate cert = certify("motzkin", b);
    CHECK(cert.matrixRank == 6);
    CHECK(cert.floatRank == 6);
    CHECK(cert.independent);
    CHECK(cert.impliedLowerBound == 6);
}

TEST_CASE("Robinson certificate on ternary sextics") {
    ZeroCertificate cert = certify("robinson", Basis::homogeneous(3, 6));
    CHECK(cert.matrixRank == 10);
    CHECK(cert.floatRank == 10);
    CHECK(cert.independent);
    CHECK(cert.impliedLowerBound == 10);
}

TEST_CASE("Harris certificate over the quadratic extension") {
    ZeroCertificate cert = certify("harris", Basis::homogeneous(3, 10));
    CHECK(cert.matrixRank == 30);
    CHECK(cert.floatRank == 30);
    CHECK(cert.independent);
    CHECK(cert.impliedLowerBound == 30);
}

TEST_CASE("a forged zero is rejected before any certificate is issued") {
    auto p = builtinPolynomial("motzkin");
    p.zeros.push_back({QuadExt(1), QuadExt(2), QuadExt(3)});
    CHECK_THROWS_AS(certify(p, Basis::homogeneous(3, 6)), DataIntegrityError);
}

TEST_CASE("a dependent zero list still certifies its rank") {
    // three linear forms cannot separate 6 points: rank <= 3, bound = rank
    auto p = builtinPolynomial("motzkin");
    ZeroCertificate cert = certify(p, Basis::homogeneous(3, 1));
    CHECK(cert.matrixRank == 3);
    CHECK_FALSE(cert.independent);
    CHECK(cert.impliedLowerBound == 3);
}
