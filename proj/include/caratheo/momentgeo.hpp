#pragma once

#include <vector>

#include "caratheo/basis.hpp"
#include "caratheo/linalg.hpp"

namespace caratheo {

// Weighted atom list mu = sum_i c_i * delta_{x_i}. Scalar type S is Rational
// for exact work and double for fitting. Projective atoms are stored as
// affine representatives with the first nonzero coordinate positive.
template <class S>
struct BasicAtomicMeasure {
    std::vector<S> weights;
    std::vector<std::vector<S>> points;
    bool isSigned = false;

    int atomCount() const { return static_cast<int>(weights.size()); }
    bool empty() const { return weights.empty(); }
};

using AtomicMeasure = BasicAtomicMeasure<double>;
using AtomicMeasureQ = BasicAtomicMeasure<Rational>;

template <class S>
struct BasicMomentSeq {
    Basis basis;
    std::vector<S> values;
};

using MomentSeq = BasicMomentSeq<double>;
using MomentSeqQ = BasicMomentSeq<Rational>;

// m x k(n+1) total-derivative block matrix; column block i is
// (s_A(x_i), c_i d_1 s_A(x_i), ..., c_i d_n s_A(x_i)).
template <class S>
struct BasicJacobianEval {
    Matrix<S> matrix;
    int atomCount = 0;
};

// s_A(x) = (f_1(x),...,f_m(x))
template <class S>
std::vector<S> momentCurve(const Basis& basis, const std::vector<S>& x) {
    if (static_cast<int>(x.size()) != basis.variableCount())
        throw DimensionError("momentCurve: point dimension mismatch");
    std::vector<S> out;
    out.reserve(basis.size());
    for (const auto& f : basis.elements()) out.push_back(f.template evalAs<S>(x));
    return out;
}

// S_{k,A}(C,X) = sum_i c_i s_A(x_i)
template <class S>
BasicMomentSeq<S> momentMap(const Basis& basis, const BasicAtomicMeasure<S>& mu) {
    BasicMomentSeq<S> seq{basis, std::vector<S>(basis.size(), S(0))};
    for (int i = 0; i < mu.atomCount(); ++i) {
        auto s = momentCurve(basis, mu.points[i]);
        for (int j = 0; j < basis.size(); ++j) seq.values[j] += mu.weights[i] * s[j];
    }
    return seq;
}

template <class S>
BasicJacobianEval<S> jacobian(const Basis& basis, const BasicAtomicMeasure<S>& mu) {
    const int m = basis.size();
    const int n = basis.variableCount();
    const int k = mu.atomCount();
    const auto& derivs = basis.elementDerivatives();
    BasicJacobianEval<S> out;
    out.atomCount = k;
    out.matrix.assign(m, std::vector<S>(k * (n + 1), S(0)));
    for (int i = 0; i < k; ++i) {
        const auto& x = mu.points[i];
        if (static_cast<int>(x.size()) != n)
            throw DimensionError("jacobian: point dimension mismatch");
        for (int j = 0; j < m; ++j) {
            out.matrix[j][i * (n + 1)] = basis.element(j).template evalAs<S>(x);
            for (int v = 0; v < n; ++v)
                out.matrix[j][i * (n + 1) + 1 + v] =
                    mu.weights[i] * derivs[j][v].template evalAs<S>(x);
        }
    }
    return out;
}

// Apolar scalar product on forms of even degree 2d: with p = sum gamma_a a_a x^a
// and q = sum gamma_a b_a x^a, [p,q] = sum gamma_a a_a b_a. Pairing against
// (lambda.x)^{2d} evaluates p at lambda.
Rational apolar(const PolyQ& p, const PolyQ& q);

// multinomial coefficient (|a|)!/(a_1!...a_n!)
Integer multinomial(const Monomial& a);

}  // namespace caratheo
