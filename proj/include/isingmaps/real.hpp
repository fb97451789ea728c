#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "rational.hpp"

namespace isingmaps {

/// Arbitrary-precision binary float over MPFR. Every value carries its own
/// precision; binary operations round to the larger operand precision.
class Real {
public:
    static mpfr_prec_t& default_precision() {
        thread_local mpfr_prec_t p = 192;
        return p;
    }

    /// RAII override of the thread's default precision.
    class PrecisionGuard {
    public:
        explicit PrecisionGuard(mpfr_prec_t p) : old_(default_precision()) { default_precision() = p; }
        ~PrecisionGuard() { default_precision() = old_; }
        PrecisionGuard(const PrecisionGuard&) = delete;
        PrecisionGuard& operator=(const PrecisionGuard&) = delete;

    private:
        mpfr_prec_t old_;
    };

    Real() : Real(0L) {}
    Real(long v, mpfr_prec_t prec = default_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    Real(int v, mpfr_prec_t prec = default_precision()) : Real(long(v), prec) {}
    Real(const Rational& q, mpfr_prec_t prec = default_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
    }
    Real(const Integer& z, mpfr_prec_t prec = default_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.backend().data(), MPFR_RNDN);
    }
    static Real from_double(double d, mpfr_prec_t prec = default_precision()) {
        Real r = uninit(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static Real from_string(const std::string& s, mpfr_prec_t prec = default_precision()) {
        Real r = uninit(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw InvalidArgument("not a real literal: '" + s + "'");
        return r;
    }
    static Real infinity(mpfr_prec_t prec = default_precision()) {
        Real r = uninit(prec);
        mpfr_set_inf(r.v_, 1);
        return r;
    }
    static Real pi(mpfr_prec_t prec = default_precision()) {
        Real r = uninit(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    /// Copy rounded to a new precision.
    Real with_precision(mpfr_prec_t p) const {
        Real r = uninit(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
    long exponent() const { return is_zero() ? -(1L << 40) : long(mpfr_get_exp(v_)); }

    /// Exact rational value of a finite Real.
    Rational to_rational() const {
        mpq_t q;
        mpq_init(q);
        mpfr_get_q(q, v_);
        Rational r(q);
        mpq_clear(q);
        return r;
    }

    /// Decimal with `digits` significant digits, trailing zeros trimmed.
    std::string str(int digits = 0) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
        if (is_zero()) return "0";
        if (digits <= 0) digits = int(double(precision()) * 0.30103) + 1;
        mpfr_exp_t e;
        char* buf = mpfr_get_str(nullptr, &e, 10, std::size_t(digits), v_, MPFR_RNDN);
        std::string m(buf);
        mpfr_free_str(buf);
        bool neg = !m.empty() && m[0] == '-';
        if (neg) m.erase(0, 1);
        while (m.size() > 1 && m.back() == '0') m.pop_back();
        std::string out;
        long exp10 = long(e);  // value = 0.m * 10^e
        if (exp10 > 0 && exp10 <= 40) {
            if (long(m.size()) <= exp10) {
                out = m + std::string(std::size_t(exp10 - long(m.size())), '0');
            } else {
                out = m.substr(0, std::size_t(exp10)) + "." + m.substr(std::size_t(exp10));
            }
        } else if (exp10 <= 0 && exp10 > -6) {
            out = "0." + std::string(std::size_t(-exp10), '0') + m;
        } else {
            out = m.substr(0, 1);
            if (m.size() > 1) out += "." + m.substr(1);
            out += "e" + std::to_string(exp10 - 1);
        }
        return neg ? "-" + out : out;
    }

#define ISINGMAPS_REAL_BINOP(op, fn)                                                   \
    friend Real operator op(const Real& a, const Real& b) {                            \
        Real r = uninit(std::max(a.precision(), b.precision()));                       \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                               \
        return r;                                                                      \
    }                                                                                  \
    Real& operator op##=(const Real& b) {                                              \
        if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN); \
        fn(v_, v_, b.v_, MPFR_RNDN);                                                   \
        return *this;                                                                  \
    }
    ISINGMAPS_REAL_BINOP(+, mpfr_add)
    ISINGMAPS_REAL_BINOP(-, mpfr_sub)
    ISINGMAPS_REAL_BINOP(*, mpfr_mul)
    ISINGMAPS_REAL_BINOP(/, mpfr_div)
#undef ISINGMAPS_REAL_BINOP

    friend Real operator*(const Real& a, long b) {
        Real r = uninit(a.precision());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long b, const Real& a) { return a * b; }
    friend Real operator/(const Real& a, long b) {
        Real r = uninit(a.precision());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r = uninit(a.precision());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, long b) {
        Real r = uninit(a.precision());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(long b, const Real& a) {
        Real r = uninit(a.precision());
        mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r = uninit(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    /// this += a*b without a temporary.
    void add_product(const Real& a, const Real& b) {
        thread_local Real tmp;
        mpfr_set_prec(tmp.v_, precision());
        mpfr_mul(tmp.v_, a.v_, b.v_, MPFR_RNDN);
        mpfr_add(v_, v_, tmp.v_, MPFR_RNDN);
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }

#define ISINGMAPS_REAL_FN(name, fn)                    \
    friend Real name(const Real& a) {                  \
        Real r = uninit(a.precision());                \
        fn(r.v_, a.v_, MPFR_RNDN);                     \
        return r;                                      \
    }
    ISINGMAPS_REAL_FN(sqrt, mpfr_sqrt)
    ISINGMAPS_REAL_FN(log, mpfr_log)
    ISINGMAPS_REAL_FN(exp, mpfr_exp)
    ISINGMAPS_REAL_FN(abs, mpfr_abs)
    ISINGMAPS_REAL_FN(cos, mpfr_cos)
    ISINGMAPS_REAL_FN(sin, mpfr_sin)
    ISINGMAPS_REAL_FN(atan, mpfr_atan)
#undef ISINGMAPS_REAL_FN

    friend Real atan2(const Real& y, const Real& x) {
        Real r = uninit(std::max(y.precision(), x.precision()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r = uninit(std::max(a.precision(), b.precision()));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, long e) {
        Real r = uninit(a.precision());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real ldexp(const Real& a, long e) {
        Real r = uninit(a.precision());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(20); }

private:
    struct NoInit {};
    explicit Real(NoInit, mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    static Real uninit(mpfr_prec_t prec) { return Real(NoInit{}, prec); }

    mpfr_t v_;
};

/// 2^-bits, the relative scale of `bits` of agreement.
inline Real epsilon_bits(long bits, mpfr_prec_t prec = Real::default_precision()) {
    return ldexp(Real(1, prec), -bits);
}

/// Relative difference |a-b| / max(|a|,|b|), zero if both vanish.
inline Real rel_diff(const Real& a, const Real& b) {
    Real m = std::max(abs(a), abs(b));
    if (m.is_zero()) return Real(0, a.precision());
    return abs(a - b) / m;
}

} // namespace isingmaps
