#include "caratheo/basis.hpp"

#include <algorithm>
#include <map>

#include "caratheo/linalg.hpp"

namespace caratheo {

std::vector<Monomial> monomialsOfDegree(int n, int d) {
    std::vector<Monomial> out;
    Monomial m(n, 0);
    // recursive enumeration, x1 exponent outermost and descending
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == n - 1) {
            m[var] = rem;
            out.push_back(m);
            m[var] = 0;
            return;
        }
        for (int e = rem; e >= 0; --e) {
            m[var] = e;
            self(self, var + 1, rem - e);
        }
        m[var] = 0;
    };
    rec(rec, 0, d);
    return out;
}

Basis Basis::fullDegree(int n, int d) {
    Basis b;
    b.n_ = n;
    b.kind_ = BasisKind::FullDegree;
    b.degree_ = d;
    for (int deg = 0; deg <= d; ++deg)
        for (auto& m : monomialsOfDegree(n, deg))
            b.elements_.push_back(PolyQ::monomial(n, std::move(m)));
    return b;
}

Basis Basis::homogeneous(int n, int d) {
    Basis b;
    b.n_ = n;
    b.kind_ = BasisKind::Homogeneous;
    b.degree_ = d;
    for (auto& m : monomialsOfDegree(n, d))
        b.elements_.push_back(PolyQ::monomial(n, std::move(m)));
    return b;
}

Basis Basis::gapped1D(const std::vector<int>& exponents) {
    if (exponents.empty())
        throw DataIntegrityError("gapped1D: empty exponent list");
    for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
        if (exponents[i] >= exponents[i + 1])
            throw DataIntegrityError("gapped1D: exponents must be strictly increasing");
    if (!exponents.empty() && exponents.front() < 0)
        throw DataIntegrityError("gapped1D: negative exponent");
    Basis b;
    b.n_ = 1;
    b.kind_ = BasisKind::Gapped1D;
    b.exponents_ = exponents;
    for (int e : exponents)
        b.elements_.push_back(PolyQ::monomial(1, Monomial{e}));
    return b;
}

Basis Basis::custom(int n, std::vector<PolyQ> elements) {
    Basis b;
    b.n_ = n;
    b.kind_ = BasisKind::Custom;
    for (const auto& p : elements)
        if (p.variableCount() != n)
            throw DimensionError("custom basis: element variable-count mismatch");
    b.elements_ = std::move(elements);
    b.checkIndependent();
    return b;
}

void Basis::checkIndependent() const {
    // coefficient matrix over the union of occurring monomials
    std::map<Monomial, int, GrlexLess> cols;
    for (const auto& p : elements_)
        for (const auto& [m, c] : p.terms())
            cols.emplace(m, 0);
    int idx = 0;
    for (auto& [m, i] : cols) i = idx++;
    Matrix<Rational> mat(elements_.size(), std::vector<Rational>(cols.size(), 0));
    for (std::size_t r = 0; r < elements_.size(); ++r)
        for (const auto& [m, c] : elements_[r].terms())
            mat[r][cols.at(m)] = c;
    if (rankExact(mat) != static_cast<int>(elements_.size()))
        throw DataIntegrityError("basis elements are linearly dependent");
}

const std::vector<std::vector<PolyQ>>& Basis::elementDerivatives() const {
    if (derivs_.empty() && !elements_.empty()) {
        derivs_.reserve(elements_.size());
        for (const auto& p : elements_) {
            std::vector<PolyQ> d;
            d.reserve(n_);
            for (int v = 0; v < n_; ++v) d.push_back(p.diff(v));
            derivs_.push_back(std::move(d));
        }
    }
    return derivs_;
}

}  // namespace caratheo
