#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caratheo/poly.hpp"

namespace caratheo {

enum class BasisKind { FullDegree, Homogeneous, Gapped1D, Custom };

// Ordered basis A = {f_1,...,f_m} of a polynomial subspace.
//
// Standard families: FullDegree(d) is all monomials of total degree <= d in n
// variables, Homogeneous(d) all monomials of total degree exactly d, and
// Gapped1D an increasing exponent list in one variable. Monomials within a
// degree are ordered with the first variable dominant (x1^2, x1 x2, x2^2).
class Basis {
public:
    static Basis fullDegree(int n, int d);
    static Basis homogeneous(int n, int d);
    static Basis gapped1D(const std::vector<int>& exponents);
    static Basis custom(int n, std::vector<PolyQ> elements);

    int variableCount() const { return n_; }
    int size() const { return static_cast<int>(elements_.size()); }
    BasisKind kind() const { return kind_; }
    std::optional<int> degree() const { return degree_; }
    const std::vector<int>& exponents() const { return exponents_; }
    const std::vector<PolyQ>& elements() const { return elements_; }
    const PolyQ& element(int j) const { return elements_[j]; }
    bool isHomogeneousKind() const { return kind_ == BasisKind::Homogeneous; }

    // cached partial derivatives, [j][v] = d f_j / d x_v
    const std::vector<std::vector<PolyQ>>& elementDerivatives() const;

private:
    Basis() = default;
    void checkIndependent() const;

    int n_ = 0;
    BasisKind kind_ = BasisKind::Custom;
    std::optional<int> degree_;
    std::vector<int> exponents_;  // Gapped1D only
    std::vector<PolyQ> elements_;
    mutable std::vector<std::vector<PolyQ>> derivs_;
};

// All monomials of total degree exactly d in n variables, first variable
// dominant. Shared by Basis and the apolar pairing.
std::vector<Monomial> monomialsOfDegree(int n, int d);

}  // namespace caratheo
