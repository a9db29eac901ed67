#include <doctest.h>

#include <cmath>
#include <random>

#include "caratheo/certzero.hpp"
#include "caratheo/measurefit.hpp"

using namespace caratheo;

namespace {

MomentSeq momentsOf(const Basis& basis, const AtomicMeasure& mu) {
    return momentMap(basis, mu);
}

double maxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("two atoms reproduce the symmetric quadratic sequence") {
    // with 4 parameters against 3 moments the solution is a one-parameter
    // family, so only the moments themselves are pinned down
    Basis basis = Basis::fullDegree(1, 2);
    MomentSeq s{basis, {2.0, 0.0, 2.0}};
    FitResult fr = fitMeasure(s, 2);
    REQUIRE(fr.converged);
    CHECK(fr.residual < 1e-9 * 2);
    REQUIRE(fr.measure.atomCount() <= 2);
    auto fitted = momentsOf(basis, fr.measure);
    CHECK(maxAbsDiff(fitted.values, s.values) < 1e-9 * 2);
    for (double w : fr.measure.weights) CHECK(w > 0);
}

TEST_CASE("gapped degree-six sequence has small positive representations") {
    Basis basis = Basis::gapped1D({0, 1, 2, 6});
    MomentSeq s{basis, {1.0, 0.0, 2.5, 32.5}};
    SUBCASE("k = 2 finds the positive two-atom representation") {
        // exact solution: x*y = -5/2, (x+y)^2 = (-30 + 2*sqrt(333))/8,
        // with both weights positive
        FitResult fr = fitMeasure(s, 2);
        REQUIRE(fr.converged);
        REQUIRE(fr.measure.atomCount() == 2);
        double x = fr.measure.points[0][0], y = fr.measure.points[1][0];
        CHECK(x * y == doctest::Approx(-2.5).epsilon(1e-6));
        double p2 = (-30.0 + 2.0 * std::sqrt(333.0)) / 8.0;
        CHECK((x + y) * (x + y) == doctest::Approx(p2).epsilon(1e-6));
        for (double w : fr.measure.weights) CHECK(w > 0);
    }
    SUBCASE("k = 4 recovers a representing measure") {
        FitResult fr = fitMeasure(s, 4);
        REQUIRE(fr.converged);
        auto fitted = momentsOf(basis, fr.measure);
        CHECK(maxAbsDiff(fitted.values, s.values) < 1e-9 * 32.5);
        for (double w : fr.measure.weights) CHECK(w > 0);
    }
}

TEST_CASE("construct-then-recover round trip in one variable") {
    Basis basis = Basis::fullDegree(1, 6);
    AtomicMeasure mu;
    mu.weights = {1.0, 2.0, 0.5};
    mu.points = {{-1.3}, {0.4}, {2.1}};
    MomentSeq s = momentsOf(basis, mu);
    CaraEstimate est = estimateCara(s);
    CHECK(est.kMin == 1);
    CHECK(est.kFound == 3);
    CHECK(est.witness.converged);
    auto fitted = momentsOf(basis, est.witness.measure);
    double sNorm = 0;
    for (double v : s.values) sNorm = std::max(sNorm, std::abs(v));
    CHECK(maxAbsDiff(fitted.values, s.values) < 1e-9 * sNorm);
}

TEST_CASE("zero sequence is the empty measure") {
    Basis basis = Basis::fullDegree(2, 2);
    MomentSeq s{basis, std::vector<double>(basis.size(), 0.0)};
    CaraEstimate est = estimateCara(s);
    CHECK(est.kFound == 0);
    CHECK(est.kMin == 0);
    CHECK(est.witness.measure.empty());
}

TEST_CASE("random positive measures are recovered with at most k atoms") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> wDist(0.1, 10.0), xDist(-2.0, 2.0);
    Basis basis = Basis::fullDegree(2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        AtomicMeasure mu;
        for (int i = 0; i < 2; ++i) {
            mu.weights.push_back(wDist(rng));
            mu.points.push_back({xDist(rng), xDist(rng)});
        }
        MomentSeq s = momentsOf(basis, mu);
        CaraEstimate est = estimateCara(s);
        CHECK(est.kFound <= 2);
        double sNorm = 0;
        for (double v : s.values) sNorm = std::max(sNorm, std::abs(v));
        auto fitted = momentsOf(basis, est.witness.measure);
        CHECK(maxAbsDiff(fitted.values, s.values) < 1e-9 * std::max(sNorm, 1.0));
    }
}

TEST_CASE("boundary sequence from the degree-six zero set needs six atoms") {
    Basis basis = motzkinExampleBasis();
    auto zs = builtinPolynomial("motzkin").zeros;
    MomentSeq s{basis, std::vector<double>(basis.size(), 0.0)};
    for (const auto& z : zs) {
        std::vector<double> x;
        for (const auto& c : z) x.push_back(toDouble(c));
        auto sv = momentCurve(basis, x);
        for (int j = 0; j < basis.size(); ++j) s.values[j] += sv[j];
    }
    CaraEstimate est = estimateCara(s, false, {}, 6);
    CHECK(est.kMin == 6);
    CHECK(est.kFound == 6);
}

TEST_CASE("maximal mass at the origin of the symmetric quadratic sequence") {
    Basis basis = Basis::fullDegree(1, 2);
    MomentSeq s{basis, {1.0, 0.0, 1.0}};
    PolyQ e = PolyQ::constant(1, Rational(1));
    MaxMassResult r = maxMass(s, {0.0}, e);
    CHECK(r.upperBoundUsed == doctest::Approx(1.0));
    CHECK(r.cStar == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.cLow <= r.cStar);
    CHECK(r.cStar <= r.cHigh);
    CHECK(r.cHigh <= r.upperBoundUsed + 1e-12);
}

TEST_CASE("maximal mass of a pure point mass is its weight") {
    Basis basis = Basis::fullDegree(1, 2);
    AtomicMeasure mu;
    mu.weights = {2.0};
    mu.points = {{0.5}};
    MomentSeq s = momentsOf(basis, mu);
    PolyQ e = PolyQ::constant(1, Rational(1));
    MaxMassResult r = maxMass(s, {0.5}, e);
    CHECK(r.cStar == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("kernel flow preserves moments and matches the closed form") {
    Basis basis = Basis::fullDegree(2, 2);
    AtomicMeasure mu0;
    mu0.weights = {1.0, 1.0};
    mu0.points = {{0.0, 0.0}, {1.0, 1.0}};

    FlowConfig fcfg;
    fcfg.normalization = FlowConfig::Normalization::FixedRate;
    fcfg.rate = -2.0;       // c_1'(t) = -2
    fcfg.rateCoordinate = 0;
    auto traj = kernelFlow(basis, mu0, 0.0, 0.35, 700, fcfg);
    REQUIRE(traj.size() == 701);
    CHECK(traj.front().measure.weights[0] == doctest::Approx(1.0));

    const double c10 = 1.0, c20 = 1.0, u0 = -1.0;  // u = x1 - x2, M = c1 x1 + c2 x2
    for (const auto& st : traj) {
        CHECK(st.momentDrift < 1e-6);
        double t = st.t;
        double c1 = c10 - 2 * t, c2 = c20 + 2 * t;
        double u = u0 * std::sqrt(c10 * c20 / (c1 * c2));
        double M = 1.0;  // c1 x1 + c2 x2 coordinatewise, conserved
        double x1 = (M + c2 * u) / (c1 + c2);
        double x2 = (M - c1 * u) / (c1 + c2);
        CHECK(st.measure.weights[0] == doctest::Approx(c1).epsilon(1e-6));
        CHECK(st.measure.weights[1] == doctest::Approx(c2).epsilon(1e-6));
        for (int v = 0; v < 2; ++v) {
            CHECK(st.measure.points[0][v] == doctest::Approx(x1).epsilon(1e-5));
            CHECK(st.measure.points[1][v] == doctest::Approx(x2).epsilon(1e-5));
        }
    }
}

TEST_CASE("kernel flow moment drift stays small for random regular starts") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wDist(0.5, 2.0), xDist(-1.5, 1.5);
    Basis basis = Basis::fullDegree(2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        AtomicMeasure mu0;
        for (int i = 0; i < 2; ++i) {
            mu0.weights.push_back(wDist(rng));
            mu0.points.push_back({xDist(rng), xDist(rng)});
        }
        auto traj = kernelFlow(basis, mu0, 0.0, 0.1, 100);
        for (const auto& st : traj) CHECK(st.momentDrift < 1e-6);
    }
}

TEST_CASE("signed power decompositions reconstruct the form") {
    SUBCASE("a fourth power of a linear form is one atom") {
        PolyQ f(2);
        // (x1 + x2)^4
        for (int a = 0; a <= 4; ++a)
            f.addTerm({a, 4 - a}, Rational(multinomial({a, 4 - a})));
        WaringResult w = waringDecompose(f);
        CHECK(w.estimate.kFound == 1);
        CHECK(w.reconstructionError < 1e-8);
    }
    SUBCASE("x1^2 x2^2 splits into few signed fourth powers") {
        PolyQ f = PolyQ::monomial(2, {2, 2});
        WaringResult w = waringDecompose(f);
        CHECK(w.estimate.kFound <= 6);  // at most twice the generic rank
        CHECK(w.reconstructionError < 1e-8);
    }
    SUBCASE("zero form is the empty measure") {
        WaringResult w = waringDecompose(PolyQ(2));
        CHECK(w.measure.empty());
        CHECK(w.estimate.kFound == 0);
    }
}
