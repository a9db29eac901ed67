#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caratheo/scalars.hpp"

namespace caratheo {

// Upper/lower bounds for the Caratheodory number of ternary forms of degree
// 2d, one row per degree. Columns, in printing order:
//   nLower          N_{B_{3,2d}}, the generic-rank lower bound
//   richter         m = C(2d+2,2), the Richter-Tchakaloff atom count
//   richterMinusOne m - 1, the general worst-case improvement
//   alphaNext       alpha(2(d+1)) = (3/2)d(d+1)+1, the zero-cap bound
//   maxFormula      max_k { alpha(2k) + (d+1)(d-k) } + 1
//   known           exact value where known, with its literature source
struct BoundsRow {
    long long twoD = 0;
    long long nLower = 0;
    long long richter = 0;
    long long richterMinusOne = 0;
    long long alphaNext = 0;
    long long maxFormula = 0;
    std::optional<long long> known;
    std::string knownSource;
};

// alpha(2d) = (3/2)d(d-1)+1: the cap on the projective zero count of a
// nonzero nonnegative ternary form of degree 2d. alpha(0) := 1.
long long alpha(long long twoD);

// Moeller's cubature lower bound for A_{2,2k-1}: C(k+1,2) + floor(k/2).
long long moellerBound(int k);

// lower bound ((k-2)^2 - 4)/6 for the gap ceil(|A_{2,2k-1}|/3) - moellerBound
Rational moellerGapLower(int k);

// max_{k=0..d} { C(2d+2,2) - C(2d+2-k,2) + beta(2(d-k)) } + 1 where beta maps
// 2j -> the best known zero-count bound; defaults beta(2j) = alpha(2j) and
// beta(0) = 1 are filled in for missing entries.
long long betaMaxBound(int d, const std::map<long long, long long>& betaValues = {});

// max_{k=0..d} { alpha(2k) + (d+1)(d-k) } + 1; collapses to alpha(2d)+1 for
// d >= 5 (asserted internally).
long long alphaMaxBound(int d);

// dimension of the space of n-variable forms of degree d: C(n+d-1, n-1)
long long homogeneousSize(int n, int d);

// |B_{4,4}| - |B_{4,2}| + 1 = 26, the quaternary-quartic bound
long long caraB44Bound();

std::vector<BoundsRow> buildTable(const std::vector<long long>& rows);

}  // namespace caratheo
