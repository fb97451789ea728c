#pragma once

#include "complex.hpp"
#include "param_poly.hpp"
#include "rational.hpp"
#include "real.hpp"

namespace isingmaps {

/// Coefficient-ring adapter. `like` supplies context such as precision.
template <class R>
struct Ring;

template <>
struct Ring<Rational> {
    static Rational zero(const Rational&) { return 0; }
    static Rational one(const Rational&) { return 1; }
    static Rational from_int(long v, const Rational&) { return v; }
    static Rational from_rational(const Rational& q, const Rational&) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational exact_div(const Rational& a, const Rational& b) {
        if (b == 0) throw NonZeroRemainder("division by zero");
        return a / b;
    }
    static constexpr bool exact = true;
    static constexpr bool field = true;
};

template <>
struct Ring<Real> {
    static Real zero(const Real& like) { return Real(0L, like.precision()); }
    static Real one(const Real& like) { return Real(1L, like.precision()); }
    static Real from_int(long v, const Real& like) { return Real(v, like.precision()); }
    static Real from_rational(const Rational& q, const Real& like) { return Real(q, like.precision()); }
    static bool is_zero(const Real& x) { return x.is_zero(); }
    static Real exact_div(const Real& a, const Real& b) { return a / b; }
    static constexpr bool exact = false;
    static constexpr bool field = true;
};

template <>
struct Ring<Complex> {
    static Complex zero(const Complex& like) { return Complex(0L, like.precision()); }
    static Complex one(const Complex& like) { return Complex(1L, like.precision()); }
    static Complex from_int(long v, const Complex& like) { return Complex(v, like.precision()); }
    static Complex from_rational(const Rational& q, const Complex& like) { return Complex(q, like.precision()); }
    static bool is_zero(const Complex& x) { return x.is_zero(); }
    static Complex exact_div(const Complex& a, const Complex& b) { return a / b; }
    static constexpr bool exact = false;
    static constexpr bool field = true;
};

template <>
struct Ring<ParamPoly> {
    static ParamPoly zero(const ParamPoly&) { return {}; }
    static ParamPoly one(const ParamPoly&) { return ParamPoly(1); }
    static ParamPoly from_int(long v, const ParamPoly&) { return ParamPoly(v); }
    static ParamPoly from_rational(const Rational& q, const ParamPoly&) { return ParamPoly(q); }
    static bool is_zero(const ParamPoly& x) { return x.is_zero(); }
    static ParamPoly exact_div(const ParamPoly& a, const ParamPoly& b) { return isingmaps::exact_div(a, b); }
    static constexpr bool exact = true;
    static constexpr bool field = false;
};

} // namespace isingmaps
