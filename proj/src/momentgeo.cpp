#include "caratheo/momentgeo.hpp"

namespace caratheo {

Integer multinomial(const Monomial& a) {
    Integer num = 1;
    int total = 0;
    for (int e : a) {
        for (int i = 1; i <= e; ++i) {
            ++total;
            num *= total;
            num /= i;
        }
    }
    return num;
}

Rational apolar(const PolyQ& p, const PolyQ& q) {
    if (p.variableCount() != q.variableCount())
        throw DimensionError("apolar: variable-count mismatch");
    if (!p.isHomogeneous() || !q.isHomogeneous())
        throw DimensionError("apolar: arguments must be homogeneous");
    if (!p.isZero() && !q.isZero()) {
        if (p.degree() != q.degree())
            throw DimensionError("apolar: degree mismatch");
        if (p.degree() % 2 != 0)
            throw DimensionError("apolar: degree must be even");
    }
    // [p,q] = sum_a coeff_p(a) coeff_q(a) / gamma_a
    Rational acc = 0;
    for (const auto& [m, cp] : p.terms()) {
        Rational cq = q.coefficient(m);
        if (cq == 0) continue;
        acc += cp * cq / Rational(multinomial(m));
    }
    return acc;
}

}  // namespace caratheo
