#include "caratheo/boundstab.hpp"

#include <stdexcept>

#include "caratheo/ranklab.hpp"

namespace caratheo {

namespace {

long long binom2(long long n) { return n * (n - 1) / 2; }

}  // namespace

long long alpha(long long twoD) {
    if (twoD < 0 || twoD % 2 != 0)
        throw DimensionError("alpha: degree must be even and nonnegative");
    long long d = twoD / 2;
    if (d == 0) return 1;
    return 3 * d * (d - 1) / 2 + 1;
}

long long moellerBound(int k) {
    if (k < 1) throw DimensionError("moellerBound: k >= 1 required");
    return binom2(k + 1LL) + k / 2;
}

Rational moellerGapLower(int k) {
    long long t = (k - 2LL) * (k - 2LL) - 4;
    return Rational(t, 6);
}

long long betaMaxBound(int d, const std::map<long long, long long>& betaValues) {
    if (d < 0) throw DimensionError("betaMaxBound: d >= 0 required");
    auto beta = [&](long long twoJ) -> long long {
        auto it = betaValues.find(twoJ);
        if (it != betaValues.end()) return it->second;
        return twoJ == 0 ? 1 : alpha(twoJ);
    };
    long long best = 0;
    for (int k = 0; k <= d; ++k) {
        long long v = binom2(2LL * d + 2) - binom2(2LL * d + 2 - k) + beta(2LL * (d - k));
        best = std::max(best, v);
    }
    return best + 1;
}

long long alphaMaxBound(int d) {
    if (d < 1) throw DimensionError("alphaMaxBound: d >= 1 required");
    long long best = 0;
    for (int k = 0; k <= d; ++k)
        best = std::max(best, alpha(2LL * k) + (d + 1LL) * (d - k));
    long long v = best + 1;
    if (d >= 5 && v != alpha(2LL * d) + 1)
        throw DataIntegrityError("alphaMaxBound: collapse to alpha(2d)+1 failed");
    return v;
}

long long homogeneousSize(int n, int d) {
    long long r = 1;
    for (int i = 1; i <= n - 1; ++i) {
        r *= d + i;
        r /= i;
    }
    return r;
}

long long caraB44Bound() {
    return homogeneousSize(4, 4) - homogeneousSize(4, 2) + 1;
}

std::vector<BoundsRow> buildTable(const std::vector<long long>& rows) {
    static const std::map<long long, std::pair<long long, std::string>> known = {
        {2, {3, "reznick92"}},
        {4, {6, "reznick92"}},
        {6, {11, "kunertPhD14"}},
    };
    std::vector<BoundsRow> out;
    out.reserve(rows.size());
    for (long long twoD : rows) {
        if (twoD <= 0 || twoD % 2 != 0)
            throw DimensionError("buildTable: rows must be positive even degrees");
        long long d = twoD / 2;
        BoundsRow r;
        r.twoD = twoD;
        r.nLower = naClosedForm(2, static_cast<int>(twoD));  // N_{B_{3,2d}} = N_{A_{2,2d}}
        r.richter = binom2(twoD + 2);
        r.richterMinusOne = r.richter - 1;
        r.alphaNext = 3 * d * (d + 1) / 2 + 1;
        r.maxFormula = alphaMaxBound(static_cast<int>(d));
        if (auto it = known.find(twoD); it != known.end()) {
            r.known = it->second.first;
            r.knownSource = it->second.second;
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace caratheo
