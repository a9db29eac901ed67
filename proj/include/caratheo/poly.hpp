#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "caratheo/scalars.hpp"

namespace caratheo {

// Exponent vector; length is the ambient variable count.
using Monomial = std::vector<int>;

inline int totalDegree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

// Graded lexicographic: compare by total degree first, then lexicographically
// on the exponent vector (x1 biggest). Fixed globally for deterministic
// iteration and canonical printing.
struct GrlexLess {
    bool operator()(const Monomial& u, const Monomial& v) const {
        int du = totalDegree(u), dv = totalDegree(v);
        if (du != dv) return du < dv;
        // within a degree: u < v iff u is lexicographically smaller
        return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
    }
};

// Sparse multivariate polynomial over an exact scalar ring T.
// Invariant: no stored coefficient is zero.
template <class T>
class Poly {
public:
    using TermMap = std::map<Monomial, T, GrlexLess>;

    Poly() : n_(0) {}
    explicit Poly(int variableCount) : n_(variableCount) {}

    static Poly constant(int variableCount, T c) {
        Poly p(variableCount);
        p.addTerm(Monomial(variableCount, 0), std::move(c));
        return p;
    }

    static Poly monomial(int variableCount, Monomial m, T c = T(1)) {
        Poly p(variableCount);
        p.addTerm(std::move(m), std::move(c));
        return p;
    }

    static Poly variable(int variableCount, int index, int power = 1) {
        Monomial m(variableCount, 0);
        m[index] = power;
        return monomial(variableCount, std::move(m));
    }

    int variableCount() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    int degree() const {
        if (terms_.empty()) return -1;
        return totalDegree(terms_.rbegin()->first);
    }

    bool isHomogeneous() const {
        if (terms_.empty()) return true;
        int d = totalDegree(terms_.begin()->first);
        return totalDegree(terms_.rbegin()->first) == d;
    }

    void addTerm(Monomial m, T c) {
        if (scalarIsZero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (scalarIsZero(it->second)) terms_.erase(it);
        }
    }

    T coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? T(0) : it->second;
    }

    // leading term under grlex (largest)
    const std::pair<const Monomial, T>& leadingTerm() const {
        return *terms_.rbegin();
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        requireSameVars(p, q);
        Poly r = p;
        for (const auto& [m, c] : q.terms_) r.addTerm(m, c);
        return r;
    }

    friend Poly operator-(const Poly& p, const Poly& q) {
        requireSameVars(p, q);
        Poly r = p;
        for (const auto& [m, c] : q.terms_) r.addTerm(m, -c);
        return r;
    }

    friend Poly operator-(const Poly& p) {
        Poly r(p.n_);
        for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& p, const Poly& q) {
        requireSameVars(p, q);
        Poly r(p.n_);
        for (const auto& [mp, cp] : p.terms_) {
            for (const auto& [mq, cq] : q.terms_) {
                Monomial m(p.n_);
                for (int i = 0; i < p.n_; ++i) m[i] = mp[i] + mq[i];
                r.addTerm(std::move(m), cp * cq);
            }
        }
        return r;
    }

    friend Poly operator*(const Poly& p, const T& c) {
        Poly r(p.n_);
        if (scalarIsZero(c)) return r;
        for (const auto& [m, k] : p.terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    Poly& operator+=(const Poly& q) { return *this = *this + q; }
    Poly& operator-=(const Poly& q) { return *this = *this - q; }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }

    friend bool operator==(const Poly& p, const Poly& q) {
        return p.n_ == q.n_ && p.terms_ == q.terms_;
    }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    template <class S>
    S evalAs(const std::vector<S>& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw DimensionError("polyEval: point dimension mismatch");
        S acc(0);
        for (const auto& [m, c] : terms_) {
            S t = coefficientAs<S>(c);
            for (int i = 0; i < n_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }

    T eval(const std::vector<T>& x) const { return evalAs<T>(x); }

    double evalDouble(const std::vector<double>& x) const { return evalAs<double>(x); }

    // exact partial derivative
    Poly diff(int varIndex) const {
        if (varIndex < 0 || varIndex >= n_)
            throw DimensionError("polyDiff: variable index out of range");
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            if (m[varIndex] == 0) continue;
            Monomial d = m;
            d[varIndex] -= 1;
            r.addTerm(std::move(d), c * T(m[varIndex]));
        }
        return r;
    }

    // substitute variable i -> image[i], a polynomial in a fresh variable set
    Poly substitute(const std::vector<Poly>& images) const {
        if (static_cast<int>(images.size()) != n_)
            throw DimensionError("substitute: image count mismatch");
        int nn = images.empty() ? 0 : images[0].variableCount();
        Poly r(nn);
        for (const auto& [m, c] : terms_) {
            Poly t = Poly::constant(nn, c);
            for (int i = 0; i < n_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= images[i];
            r += t;
        }
        return r;
    }

private:
    template <class S>
    static S coefficientAs(const T& c) {
        if constexpr (std::is_same_v<S, double>)
            return toDouble(c);
        else
            return S(c);
    }

    static void requireSameVars(const Poly& p, const Poly& q) {
        if (p.n_ != q.n_)
            throw DimensionError("polynomial variable-count mismatch");
    }

    int n_;
    TermMap terms_;
};

using PolyQ = Poly<Rational>;
using PolyQ2 = Poly<QuadExt>;

// Exact division: returns q with p = d*q, or throws DivisibilityError.
// A single divisor is a Groebner basis of its ideal, so the division
// algorithm has zero remainder exactly when d divides p.
template <class T>
Poly<T> polyDivExact(const Poly<T>& p, const Poly<T>& d) {
    if (p.variableCount() != d.variableCount())
        throw DimensionError("polyDivExact: variable-count mismatch");
    if (d.isZero()) throw DivisibilityError("polyDivExact: zero divisor");
    const int n = p.variableCount();
    Poly<T> q(n), r = p;
    const auto& [dm, dc] = d.leadingTerm();
    while (!r.isZero()) {
        const auto& [rm, rc] = r.leadingTerm();
        Monomial m(n);
        for (int i = 0; i < n; ++i) {
            m[i] = rm[i] - dm[i];
            if (m[i] < 0)
                throw DivisibilityError("polyDivExact: division is not exact");
        }
        T c = rc / dc;
        Poly<T> t = Poly<T>::monomial(n, std::move(m), std::move(c));
        q += t;
        r -= t * d;
    }
    return q;
}

template <class T>
Poly<T> polyAdd(const Poly<T>& p, const Poly<T>& q) { return p + q; }
template <class T>
Poly<T> polyMul(const Poly<T>& p, const Poly<T>& q) { return p * q; }
template <class T>
T polyEval(const Poly<T>& p, const std::vector<T>& x) { return p.eval(x); }
template <class T>
Poly<T> polyDiff(const Poly<T>& p, int varIndex) { return p.diff(varIndex); }

}  // namespace caratheo
