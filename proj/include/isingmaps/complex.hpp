#pragma once

#include "real.hpp"

namespace isingmaps {

/// Minimal complex number over Real.
struct Complex {
    Real re, im;

    Complex() : re(0L), im(0L) {}
    Complex(const Real& r) : re(r), im(0L, r.precision()) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long v, mpfr_prec_t p = Real::default_precision()) : re(v, p), im(0L, p) {}
    Complex(const Rational& q, mpfr_prec_t p = Real::default_precision()) : re(q, p), im(0L, p) {}

    mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
    Complex& operator/=(const Complex& b) { return *this = *this / b; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend Real abs(const Complex& a) {
        Real r = a.re;
        mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
        return r;
    }
    friend Real arg(const Complex& a) { return atan2(a.im, a.re); }
    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    static Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }
    friend Complex pow(const Complex& a, long e) {
        if (e < 0) return Complex(1L, a.precision()) / pow(a, -e);
        Complex r(1L, a.precision()), b = a;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }
    /// Principal q-th root.
    friend Complex root(const Complex& a, long q) {
        if (a.is_zero()) return a;
        Real r = pow(abs(a), Real(1L, a.precision()) / Real(q, a.precision()));
        return polar(r, arg(a) / Real(q, a.precision()));
    }
    std::string str(int digits = 20) const {
        return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
    }
};

} // namespace isingmaps
