#pragma once

#include <vector>

#include "caratheo/poly.hpp"

namespace caratheo {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free Bareiss determinant over a ring with exact division.
// Division routine: divide(a, b) must return the exact quotient a/b.
template <class T, class Div>
T bareissDet(Matrix<T> m, const T& zero, const T& one, Div divide) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DimensionError("detExact: non-square matrix");
    if (n == 0) return one;
    T prev = one;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == zero) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == zero) ++piv;
            if (piv == n) return zero;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            }
            m[i][k] = zero;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

template <class T>
Poly<T> detExact(const Matrix<Poly<T>>& m) {
    if (m.empty()) throw DimensionError("detExact: empty matrix");
    const int nv = m[0][0].variableCount();
    Poly<T> zero(nv), one = Poly<T>::constant(nv, T(1));
    return bareissDet<Poly<T>>(m, zero, one, [](const Poly<T>& a, const Poly<T>& b) {
        return polyDivExact(a, b);
    });
}

inline Rational detExact(const Matrix<Rational>& m) {
    return bareissDet<Rational>(m, Rational(0), Rational(1),
                                [](const Rational& a, const Rational& b) { return a / b; });
}

// Exact rank of a rational matrix: clear denominators row-wise, then
// fraction-free elimination over the integers.
int rankExact(const Matrix<Rational>& m);

// Exact rank over Q[sqrt(2)] by Gaussian elimination in the extension field.
int rankExact(const Matrix<QuadExt>& m);

// Floating-point rank via SVD with threshold tol * sigma_max.
int rankFloat(const Matrix<double>& m, double relTol = 1e-8);

inline Matrix<double> toDoubleMatrix(const Matrix<QuadExt>& m) {
    Matrix<double> r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (const auto& x : m[i]) r[i].push_back(toDouble(x));
    }
    return r;
}

inline Matrix<double> toDoubleMatrix(const Matrix<Rational>& m) {
    Matrix<double> r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (const auto& x : m[i]) r[i].push_back(toDouble(x));
    }
    return r;
}

}  // namespace caratheo
