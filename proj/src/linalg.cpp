#include "caratheo/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace caratheo {

namespace {

// Fraction-free (Bareiss-style) row reduction for rank only; pivots may be
// picked anywhere in the remaining block.
int integerRank(Matrix<Integer> m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace

int rankExact(const Matrix<Rational>& m) {
    Matrix<Integer> im(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Integer lcm = 1;
        for (const auto& x : m[i]) {
            Integer d = boost::multiprecision::denominator(x);
            lcm = boost::multiprecision::lcm(lcm, d);
        }
        im[i].reserve(m[i].size());
        for (const auto& x : m[i]) {
            im[i].push_back(boost::multiprecision::numerator(x) *
                            (lcm / boost::multiprecision::denominator(x)));
        }
    }
    return integerRank(std::move(im));
}

int rankExact(const Matrix<QuadExt>& m) {
    Matrix<QuadExt> a = m;
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].isZero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        QuadExt inv = QuadExt(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].isZero()) continue;
            QuadExt f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

int rankFloat(const Matrix<double>& m, double relTol) {
    if (m.empty()) return 0;
    Eigen::MatrixXd em(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) em(i, j) = m[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double thresh = relTol * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return rank;
}

}  // namespace caratheo
