#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

#include "qhmod/errors.hpp"

namespace qhmod {

/// Arbitrary-precision rational, stored in lowest terms with positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZeroError{};
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_string(const std::string& s) {
    Rational r(s, 10);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Gaussian rational: exact complex scalar with rational real and imaginary parts.
/// Closed under +, -, *, and / by nonzero; equality is exact.
struct ExactComplex {
    Rational re{0};
    Rational im{0};

    ExactComplex() = default;
    ExactComplex(Rational r) : re(std::move(r)) {}
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(long r) : re(make_rational(r)) {}
    ExactComplex(long r, long i) : re(make_rational(r)), im(make_rational(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    ExactComplex conj() const { return {re, -im}; }

    /// |z|^2 as an exact rational.
    Rational norm2() const { return re * re + im * im; }

    std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        if (b.is_zero()) throw DivisionByZeroError{};
        Rational n = b.norm2();
        ExactComplex num = a * b.conj();
        return {num.re / n, num.im / n};
    }

    ExactComplex& operator+=(const ExactComplex& o) { *this = *this + o; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { *this = *this - o; return *this; }
    ExactComplex& operator*=(const ExactComplex& o) { *this = *this * o; return *this; }
    ExactComplex& operator/=(const ExactComplex& o) { *this = *this / o; return *this; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

    ExactComplex inverse() const { return ExactComplex(1) / *this; }

    /// Debug form "re" or "re+im*i"; canonical rendering lives in the parser module.
    std::string str() const;
};

std::string rational_str(const Rational& r);

} // namespace qhmod
