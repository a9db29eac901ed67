#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace caratheo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisibilityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DataIntegrityError : std::domain_error {
    using std::domain_error::domain_error;
};

inline double toDouble(const Rational& r) { return r.convert_to<double>(); }

// "p/q" or "p"; throws on malformed input or zero denominator.
Rational parseRational(const std::string& s);

std::string rationalToString(const Rational& r);

// Element a + b*sqrt(2) of Q[sqrt(2)].
struct QuadExt {
    Rational a;
    Rational b;

    QuadExt() = default;
    QuadExt(Rational a_) : a(std::move(a_)) {}
    QuadExt(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    QuadExt(int v) : a(v) {}

    bool isZero() const { return a == 0 && b == 0; }
    bool isRational() const { return b == 0; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b}; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r, r^2 = 2
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        // 1/(c + d r) = (c - d r)/(c^2 - 2 d^2)
        Rational n = y.a * y.a - 2 * y.b * y.b;
        if (n == 0) throw std::domain_error("QuadExt division by zero");
        return x * QuadExt{y.a / n, -y.b / n};
    }
    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
    QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
        os << x.a;
        if (x.b != 0) os << (x.b > 0 ? "+" : "") << x.b << "*sqrt2";
        return os;
    }
};

inline double toDouble(const QuadExt& x) {
    return toDouble(x.a) + toDouble(x.b) * 1.4142135623730951;
}

template <class T>
inline bool scalarIsZero(const T& x) { return x == T(0); }
inline bool scalarIsZero(const QuadExt& x) { return x.isZero(); }

}  // namespace caratheo
