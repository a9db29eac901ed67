#pragma once

#include <string>
#include <vector>

#include "caratheo/momentgeo.hpp"

namespace caratheo {

// A nonnegative form together with its full projective zero list. Zero
// coordinates live in Q[sqrt(2)] (needed for the Harris zeros); the stored
// representatives are canonical: first nonzero coordinate positive, scaled
// projectively, no two representatives scalar multiples of each other.
struct ZeroSetPolynomial {
    std::string name;
    PolyQ polynomial;
    std::vector<std::vector<QuadExt>> zeros;
};

// builtins: "motzkin" (degree 6, 6 zeros), "robinson" (degree 6, 10 zeros),
// "harris" (degree 10, 30 zeros). Every builtin is validated on construction
// by exact evaluation: all listed zeros must annihilate the polynomial.
ZeroSetPolynomial builtinPolynomial(const std::string& name);

// Lower-bound certificate: if p >= 0 has zeros z_1..z_k with {s_A(z_i)}
// linearly independent, then every representing measure of
// s = sum_i s_A(z_i) is supported on the zeros and the Caratheodory number
// is at least k. A dependent zero list still certifies its rank (restrict to
// a maximal independent subset).
struct ZeroCertificate {
    ZeroSetPolynomial input;
    Basis basis;
    int matrixRank = 0;
    int floatRank = 0;  // SVD cross-check, threshold 1e-8 * sigma_max
    bool independent = false;
    int impliedLowerBound = 0;
};

ZeroCertificate certify(const ZeroSetPolynomial& p, const Basis& basis);
ZeroCertificate certify(const std::string& builtinName, const Basis& basis);

// the 7-element degree-6 basis {M, x^6, y^6, z^6, x^5 y, x^5 z, x^4 y z}
// whose moment matrix at the Motzkin zeros has rank 6
Basis motzkinExampleBasis();

}  // namespace caratheo
