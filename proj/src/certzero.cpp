#include "caratheo/certzero.hpp"

#include <algorithm>
#include <set>

namespace caratheo {

namespace {

PolyQ ternary(std::initializer_list<std::pair<Monomial, Rational>> terms) {
    PolyQ p(3);
    for (auto& [m, c] : terms) p.addTerm(m, c);
    return p;
}

// all coordinate permutations of v with all sign patterns, deduplicated
// projectively with the first nonzero coordinate made positive
std::vector<std::vector<QuadExt>> signedPermOrbit(const std::vector<QuadExt>& v) {
    std::vector<int> idx = {0, 1, 2};
    std::vector<std::vector<QuadExt>> out;
    auto canonical = [](std::vector<QuadExt> p) {
        for (const auto& c : p) {
            if (!c.isZero()) {
                if (c.a < 0 || (c.a == 0 && c.b < 0))
                    for (auto& x : p) x = -x;
                break;
            }
        }
        return p;
    };
    std::sort(idx.begin(), idx.end());
    do {
        for (int signs = 0; signs < 8; ++signs) {
            std::vector<QuadExt> p(3);
            for (int i = 0; i < 3; ++i) {
                p[i] = v[idx[i]];
                if (signs & (1 << i)) p[i] = -p[i];
            }
            p = canonical(std::move(p));
            bool dup = false;
            for (const auto& q : out) {
                // projective comparison: q = lambda p for some scalar
                QuadExt lambda(0);
                bool consistent = true;
                for (int i = 0; i < 3 && consistent; ++i) {
                    if (p[i].isZero() != q[i].isZero()) consistent = false;
                    else if (!p[i].isZero()) {
                        QuadExt r = q[i] / p[i];
                        if (lambda.isZero()) lambda = r;
                        else if (r != lambda) consistent = false;
                    }
                }
                if (consistent) { dup = true; break; }
            }
            if (!dup) out.push_back(std::move(p));
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

void validateZeros(const ZeroSetPolynomial& p) {
    for (const auto& z : p.zeros) {
        if (static_cast<int>(z.size()) != p.polynomial.variableCount())
            throw DimensionError("zero dimension mismatch");
        if (!p.polynomial.evalAs<QuadExt>(z).isZero())
            throw DataIntegrityError("claimed zero of '" + p.name +
                                     "' does not annihilate the polynomial");
    }
}

std::vector<QuadExt> q3(int a, int b, int c) {
    return {QuadExt(a), QuadExt(b), QuadExt(c)};
}

}  // namespace

ZeroSetPolynomial builtinPolynomial(const std::string& name) {
    ZeroSetPolynomial out;
    out.name = name;
    if (name == "motzkin") {
        out.polynomial = ternary({{{0, 0, 6}, 1},
                                  {{4, 2, 0}, 1},
                                  {{2, 4, 0}, 1},
                                  {{2, 2, 2}, -3}});
        out.zeros = {q3(1, 1, 1), q3(1, 1, -1), q3(1, -1, 1),
                     q3(1, -1, -1), q3(1, 0, 0), q3(0, 1, 0)};
    } else if (name == "robinson") {
        out.polynomial = ternary({{{6, 0, 0}, 1}, {{0, 6, 0}, 1}, {{0, 0, 6}, 1},
                                  {{4, 2, 0}, -1}, {{2, 4, 0}, -1},
                                  {{0, 4, 2}, -1}, {{0, 2, 4}, -1},
                                  {{2, 0, 4}, -1}, {{4, 0, 2}, -1},
                                  {{2, 2, 2}, 3}});
        out.zeros = {q3(1, 1, 1), q3(1, 1, -1), q3(1, -1, 1), q3(1, -1, -1),
                     q3(1, 1, 0), q3(1, -1, 0), q3(1, 0, 1), q3(1, 0, -1),
                     q3(0, 1, 1), q3(0, 1, -1)};
    } else if (name == "harris") {
        // degree-10 form with exactly 30 projective zeros; coefficient data is
        // gated by the exact vanishing check below
        PolyQ h(3);
        auto sym2 = [&](int e1, int e2, const Rational& c) {
            // sum over ordered pairs of distinct variables: x^e1 y^e2
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    Monomial m(3, 0);
                    m[i] = e1;
                    m[j] = e2;
                    h.addTerm(std::move(m), c);
                }
        };
        for (int i = 0; i < 3; ++i) {
            Monomial m(3, 0);
            m[i] = 10;
            h.addTerm(std::move(m), 16);
        }
        sym2(8, 2, -36);
        sym2(6, 4, 20);
        for (int i = 0; i < 3; ++i) {
            Monomial m(3, 2);
            m[i] = 6;
            h.addTerm(std::move(m), 57);
            Monomial m2(3, 4);
            m2[i] = 2;
            h.addTerm(std::move(m2), -38);
        }
        out.polynomial = h;
        const QuadExt sqrt2(0, 1);
        const QuadExt half(Rational(1, 2));
        for (const auto& rep : {std::vector<QuadExt>{QuadExt(1), QuadExt(1), QuadExt(0)},
                                {QuadExt(1), QuadExt(1), sqrt2},
                                {QuadExt(1), QuadExt(1), half}}) {
            for (auto& z : signedPermOrbit(rep)) out.zeros.push_back(std::move(z));
        }
    } else {
        throw DataIntegrityError("unknown builtin polynomial: " + name);
    }
    validateZeros(out);
    return out;
}

ZeroCertificate certify(const ZeroSetPolynomial& p, const Basis& basis) {
    validateZeros(p);
    ZeroCertificate cert{p, basis};
    const int k = static_cast<int>(p.zeros.size());
    Matrix<QuadExt> mat(k);
    for (int i = 0; i < k; ++i) mat[i] = momentCurve<QuadExt>(basis, p.zeros[i]);
    cert.matrixRank = rankExact(mat);
    cert.floatRank = rankFloat(toDoubleMatrix(mat));
    cert.independent = (cert.matrixRank == k);
    // a maximal independent subset of the zeros is still a zero set of p
    cert.impliedLowerBound = cert.matrixRank;
    return cert;
}

ZeroCertificate certify(const std::string& builtinName, const Basis& basis) {
    return certify(builtinPolynomial(builtinName), basis);
}

Basis motzkinExampleBasis() {
    std::vector<PolyQ> els;
    els.push_back(builtinPolynomial("motzkin").polynomial);
    auto mono = [](int a, int b, int c) {
        return PolyQ::monomial(3, Monomial{a, b, c});
    };
    els.push_back(mono(6, 0, 0));
    els.push_back(mono(0, 6, 0));
    els.push_back(mono(0, 0, 6));
    els.push_back(mono(5, 1, 0));
    els.push_back(mono(5, 0, 1));
    els.push_back(mono(4, 1, 1));
    return Basis::custom(3, std::move(els));
}

}  // namespace caratheo
