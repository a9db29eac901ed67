#include "caratheo/ranklab.hpp"

#include <random>

namespace caratheo {

int naLowerBound(const Basis& basis) {
    const int m = basis.size();
    const int n = basis.variableCount();
    const int den = basis.isHomogeneousKind() ? n : n + 1;
    return (m + den - 1) / den;
}

int jacobianRank(const Basis& basis, const AtomicMeasureQ& mu) {
    return rankExact(jacobian(basis, mu).matrix);
}

namespace {

// DS rank at integer points, weights 1. For homogeneous bases the points sit
// on the chart x_n = 1 and the last partial column of each atom is omitted
// (it is a combination of the remaining columns of that atom).
int probeRank(const Basis& basis, const std::vector<std::vector<Rational>>& pts) {
    const int m = basis.size();
    const int n = basis.variableCount();
    const bool hom = basis.isHomogeneousKind();
    const int colsPerAtom = hom ? n : n + 1;
    const auto& derivs = basis.elementDerivatives();
    Matrix<Rational> mat(m, std::vector<Rational>(pts.size() * colsPerAtom, 0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int j = 0; j < m; ++j) {
            mat[j][i * colsPerAtom] = basis.element(j).eval(pts[i]);
            for (int v = 0; v + 1 < colsPerAtom; ++v)
                mat[j][i * colsPerAtom + 1 + v] = derivs[j][v].eval(pts[i]);
        }
    }
    return rankExact(mat);
}

}  // namespace

NAReport naProbe(const Basis& basis, int maxK, int trials, std::uint64_t seed) {
    const int m = basis.size();
    const int n = basis.variableCount();
    const bool hom = basis.isHomogeneousKind();
    const int lb = naLowerBound(basis);
    if (maxK < lb) throw DimensionError("naProbe: maxK below the rank lower bound");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-10000, 10000);

    auto randomPoints = [&](int k) {
        std::vector<std::vector<Rational>> pts(k, std::vector<Rational>(n, 0));
        for (auto& p : pts) {
            for (int v = 0; v < n; ++v) p[v] = coord(rng);
            if (hom) p[n - 1] = 1;  // affine chart representative
        }
        return pts;
    };

    int bestRank = 0;
    for (int k = lb; k <= maxK; ++k) {
        for (int t = 0; t < trials; ++t) {
            auto pts = randomPoints(k);
            int r = probeRank(basis, pts);
            bestRank = std::max(bestRank, r);
            if (r == m) {
                NAReport rep;
                rep.nA = k;
                rep.lowerBound = lb;
                AtomicMeasureQ w;
                w.weights.assign(k, Rational(1));
                w.points = std::move(pts);
                rep.witness = std::move(w);
                return rep;
            }
        }
    }
    throw ProbeExhausted(bestRank, m);
}

int naClosedForm(int n, int d, bool homogeneous) {
    if (n < 1 || d < 1) throw DimensionError("naClosedForm: require n >= 1, d >= 1");
    if (homogeneous) {
        // N_{B_{n,d}} = N_{A_{n-1,d}}; B_{1,d} is a single monomial
        if (n == 1) return 1;
        return naClosedForm(n - 1, d, false);
    }
    if (d == 2) return n + 1;
    if (n == 4 && d == 3) return 8;
    if (n == 2 && d == 4) return 6;
    if (n == 3 && d == 4) return 10;
    if (n == 4 && d == 4) return 15;
    Integer binom = 1;
    for (int i = 1; i <= n; ++i) {
        binom *= d + i;
        binom /= i;
    }
    Integer q = (binom + n) / (n + 1);  // ceil
    return q.convert_to<int>();
}

}  // namespace caratheo
