#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caratheo/momentgeo.hpp"

namespace caratheo {

// Factorization of the moment-curve determinant for a gapped one-variable
// basis A = {x^{d_1},...,x^{d_m}}, d_1 < ... < d_m:
//
//   f_A(x_1,...,x_m) = det(s_A(x_1),...,s_A(x_m))
//                    = (x_1...x_m)^{d_1} prod_{i<j}(x_j - x_i) * p_A,
//
// where p_A is a Schur polynomial: homogeneous of degree
// sum d_i - m d_1 - m(m-1)/2 with positive integer coefficients.
struct SchurDecomposition {
    std::vector<int> exponents;  // d_1 < ... < d_m
    PolyQ fA;                    // m variables x_1..x_m
    PolyQ vandermondeFactor;     // prod_{i<j}(x_j - x_i)
    int prefixPower = 0;         // d_1
    PolyQ pA;
};

SchurDecomposition schurDecompose(const std::vector<int>& exponents);

// Collision specializations of p_A on k = ceil(m/2) variables.
// Even m = 2k: a single symmetric q_A(x_1,...,x_k) = p_A(x_1,x_1,...,x_k,x_k).
// Odd m = 2k-1: q_{A,i} doubles every point except the i-th; the list is
// polys[0..k-1] = q_{A,1},...,q_{A,k}, pairwise related by relabeling.
struct QPoly {
    bool even = true;
    int k = 0;
    std::vector<PolyQ> polys;
    // Homogenized variants on (x_1,y_1,...,x_k,y_k): q_B for even m, q_{B,k}
    // for odd m. Well-defined (positive y-exponents) whenever the defining
    // y-power bounds the per-variable degree; empty otherwise.
    std::vector<PolyQ> homogeneous;
};

QPoly buildQ(const SchurDecomposition& decomp);

enum class Verdict { Equal, Mismatch };

struct IdentityReport {
    Verdict verdict = Verdict::Mismatch;
    bool symbolic = true;  // false: spot-checked at random points (m > cap)
    PolyQ lhs;             // det with weights divided out
    PolyQ rhs;             // closed-form product
    PolyQ diff;            // lhs - rhs when mismatched
};

// Checks the closed-form Jacobian determinant identity for the gapped basis:
// even m = 2k,
//   det DS_{k,A} = c_1..c_k (x_1..x_k)^{2d_1} prod(x_j-x_i)^4 q_A,
// odd m = 2k-1,
//   det(DS_{k-1,A}, s_A(x_k)) = c_1..c_{k-1} (x_1..x_{k-1})^{2d_1} x_k^{d_1}
//       prod_{i<j<k}(x_j-x_i)^4 prod_{i<k}(x_k-x_i)^2 q_{A,k}.
// Weights enter the determinant multilinearly as the bare product c_1..c_k,
// so both sides are compared with the weights divided out. For m above the
// cap the identity is spot-checked at 20 random exact rational points.
IdentityReport verifyJacobianIdentity(const std::vector<int>& exponents,
                                      int symbolicCap = 8,
                                      std::uint64_t seed = 0);

struct HomIdentityReport {
    Verdict verdict = Verdict::Mismatch;
    PolyQ lhs;   // det over (x_i, y_i), weights divided out
    PolyQ qHom;  // cofactor of the closed-form prefactor
    bool coefficientsNonnegative = false;
    bool dehomogenizationMatches = false;  // qHom at y = 1 equals q_A / q_{A,k}
};

// Projective version on B = {x^{d_i} y^{D - d_i}} with homogenization degree
// D >= d_m: divides the symbolic determinant by
//   (x_1..x_{k(-1)})^{2d_1} [x_k^{d_1}] prod(x_j y_i - x_i y_j)^4
//   [prod_i (x_k y_i - x_i y_k)^2]
// and checks that the cofactor is a polynomial with nonnegative integer
// coefficients whose dehomogenization (all y_i = 1) is q_A resp. q_{A,k}.
HomIdentityReport verifyJacobianIdentityHomogeneous(
    const std::vector<int>& exponents, int homDegree, int symbolicCap = 8);

struct Condition22Report {
    bool holds = true;
    bool certified = false;  // true only for the trivial / orthant arguments
    std::string detail;
    long long samples = 0;
    std::vector<double> witness;  // normalized counterexample when !holds
};

// Coordinate-collision condition on the common zero set of the q polynomials:
// every common zero must have two equal coordinates. mode "numeric" searches
// for a counterexample with 10^6 low-discrepancy sphere samples plus 10^3
// Nelder-Mead minimizations of sum q_i^2; a hit must stay a zero to 1e-10 and
// keep min pairwise coordinate distance > 1e-4 after normalization. The
// verdict is evidence, not proof. mode "positivity" first tries a sign-based
// orthant argument (all coefficients are nonnegative integers); it certifies
// the orthants it covers and falls back to the numeric search for the rest.
Condition22Report checkCondition22(const std::vector<int>& exponents,
                                   const std::string& mode = "numeric",
                                   std::uint64_t seed = 0);

}  // namespace caratheo
