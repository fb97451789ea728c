#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace isingmaps {

/// Dense univariate polynomial over R; coefficient i multiplies x^i.
template <class R>
class UniPoly {
public:
    using coeff_type = R;

    UniPoly() = default;
    explicit UniPoly(std::vector<R> c) : c_(std::move(c)) { trim(); }
    UniPoly(std::initializer_list<R> c) : c_(c) { trim(); }
    explicit UniPoly(const R& constant) : c_{constant} { trim(); }

    static UniPoly x(const R& like) { return UniPoly({Ring<R>::zero(like), Ring<R>::one(like)}); }
    static UniPoly monomial(const R& coef, int deg) {
        std::vector<R> c(std::size_t(deg) + 1, Ring<R>::zero(coef));
        c[std::size_t(deg)] = coef;
        return UniPoly(std::move(c));
    }

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& operator[](int i) const { return c_[std::size_t(i)]; }
    /// Coefficient i, or zero past the degree (needs a nonzero polynomial for context).
    R coeff(int i, const R& like) const {
        return (i >= 0 && i <= degree()) ? c_[std::size_t(i)] : Ring<R>::zero(like);
    }
    const R& lc() const { return c_.back(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() < b.c_.size()) return b + a;
        std::vector<R> r = a.c_;
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<R> r;
        r.reserve(a.c_.size());
        for (auto& v : a.c_) r.push_back(-v);
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<R> r(a.c_.size() + b.c_.size() - 1, Ring<R>::zero(a.c_[0]));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (Ring<R>::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const R& s) {
        std::vector<R> r;
        r.reserve(a.c_.size());
        for (auto& v : a.c_) r.push_back(v * s);
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const R& s, const UniPoly& a) { return a * s; }
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<R> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Ring<R>::from_int(long(i), c_[i]));
        return UniPoly(std::move(r));
    }

    /// Horner evaluation at a value of a possibly different type V.
    template <class V>
    V eval(const V& x) const {
        if (c_.empty()) return x - x;
        V r = convert<V>(c_.back(), x);
        for (std::size_t i = c_.size() - 1; i-- > 0;) r = r * x + convert<V>(c_[i], x);
        return r;
    }

    /// p(x + a).
    UniPoly taylor_shift(const R& a) const {
        std::vector<R> r = c_;
        const int n = int(r.size());
        for (int i = 0; i < n - 1; ++i)
            for (int j = n - 2; j >= i; --j) r[std::size_t(j)] = r[std::size_t(j)] + a * r[std::size_t(j) + 1];
        return UniPoly(std::move(r));
    }

    /// p(s·x).
    UniPoly scale_arg(const R& s) const {
        std::vector<R> r = c_;
        R f = Ring<R>::one(s);
        for (auto& v : r) {
            v = v * f;
            f = f * s;
        }
        return UniPoly(std::move(r));
    }

    /// Applies f to each coefficient.
    template <class S, class F>
    UniPoly<S> map(F f) const {
        std::vector<S> r;
        r.reserve(c_.size());
        for (auto& v : c_) r.push_back(f(v));
        return UniPoly<S>(std::move(r));
    }

private:
    template <class V>
    static V convert(const R& c, const V& like) {
        if constexpr (std::is_same_v<V, R>) {
            (void)like;
            return c;
        } else if constexpr (std::is_same_v<V, Complex> && std::is_same_v<R, Rational>) {
            return Complex(c, like.precision());
        } else if constexpr (std::is_same_v<V, Complex> && std::is_same_v<R, Real>) {
            return Complex(c);
        } else if constexpr (std::is_same_v<V, Real> && std::is_same_v<R, Rational>) {
            return Real(c, like.precision());
        } else {
            return V(c);
        }
    }
    void trim() {
        while (!c_.empty() && Ring<R>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<R> c_;
};

template <class R>
struct Ring<UniPoly<R>> {
    static UniPoly<R> zero(const UniPoly<R>&) { return {}; }
    static UniPoly<R> one(const UniPoly<R>& like) {
        return UniPoly<R>(like.is_zero() ? R(1L) : Ring<R>::one(like.lc()));
    }
    static UniPoly<R> from_int(long v, const UniPoly<R>& like) {
        return UniPoly<R>(like.is_zero() ? R(v) : Ring<R>::from_int(v, like.lc()));
    }
    static bool is_zero(const UniPoly<R>& x) { return x.is_zero(); }
    static UniPoly<R> exact_div(const UniPoly<R>& a, const UniPoly<R>& b);
    static constexpr bool exact = Ring<R>::exact;
    static constexpr bool field = false;
};

/// Pseudo-remainder: lc(b)^(deg a − deg b + 1)·a = q·b + r.
template <class R>
UniPoly<R> pseudo_remainder(const UniPoly<R>& a, const UniPoly<R>& b) {
    if (b.is_zero()) throw NonZeroRemainder("pseudo-division by zero");
    if (a.degree() < b.degree()) return a;
    std::vector<R> r = a.coeffs();
    const int db = b.degree();
    const R& l = b.lc();
    // one multiplication by l per step, deg a − deg b + 1 steps in all
    for (int k = a.degree(); k >= db; --k) {
        R t = r[std::size_t(k)];
        for (auto& v : r) v = v * l;
        for (int j = 0; j <= db; ++j) r[std::size_t(k - db + j)] = r[std::size_t(k - db + j)] - t * b[j];
        r.pop_back();
    }
    return UniPoly<R>(std::move(r));
}

/// Quotient and remainder over a field.
template <class R>
std::pair<UniPoly<R>, UniPoly<R>> divmod(const UniPoly<R>& a, const UniPoly<R>& b) {
    if (b.is_zero()) throw NonZeroRemainder("division by the zero polynomial");
    if (a.degree() < b.degree()) return {UniPoly<R>(), a};
    std::vector<R> r = a.coeffs();
    const int db = b.degree();
    std::vector<R> q(std::size_t(a.degree() - db + 1), Ring<R>::zero(b.lc()));
    for (int k = a.degree(); k >= db; --k) {
        R t = Ring<R>::exact_div(r[std::size_t(k)], b.lc());
        for (int j = 0; j <= db; ++j) r[std::size_t(k - db + j)] = r[std::size_t(k - db + j)] - t * b[j];
        r[std::size_t(k)] = Ring<R>::zero(t);
        q[std::size_t(k - db)] = std::move(t);
    }
    r.resize(std::size_t(db));
    return {UniPoly<R>(std::move(q)), UniPoly<R>(std::move(r))};
}

/// Exact quotient; NonZeroRemainder if b does not divide a.
/// Over a non-field R coefficient divisions must themselves be exact.
template <class R>
UniPoly<R> poly_exact_div(const UniPoly<R>& a, const UniPoly<R>& b) {
    if (b.is_zero()) throw NonZeroRemainder("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw NonZeroRemainder("polynomial division leaves a remainder");
    auto [q, r] = divmod(a, b);
    if constexpr (Ring<R>::exact) {
        if (!r.is_zero()) throw NonZeroRemainder("polynomial division leaves a remainder");
    }
    return q;
}

template <class R>
UniPoly<R> Ring<UniPoly<R>>::exact_div(const UniPoly<R>& a, const UniPoly<R>& b) {
    return poly_exact_div(a, b);
}

/// Monic polynomial scaled so the leading coefficient is 1.
template <class R>
UniPoly<R> monic(const UniPoly<R>& p) {
    if (p.is_zero()) return p;
    R inv = Ring<R>::exact_div(Ring<R>::one(p.lc()), p.lc());
    return p * inv;
}

/// Monic gcd over ℚ.
inline UniPoly<Rational> gcd(UniPoly<Rational> a, UniPoly<Rational> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Integer primitive part with positive leading coefficient.
inline UniPoly<Rational> primitive_part(const UniPoly<Rational>& p) {
    if (p.is_zero()) return p;
    Integer den = 1, g = 0;
    for (auto& v : p.coeffs()) den = boost::multiprecision::lcm(den, Integer(denominator(v)));
    for (auto& v : p.coeffs()) g = boost::multiprecision::gcd(g, Integer(numerator(v) * (den / denominator(v))));
    Rational s = Rational(den) / Rational(g);
    if (p.lc() < 0) s = -s;
    return p * s;
}

/// p / gcd(p, p′), normalized to an integer primitive polynomial.
inline UniPoly<Rational> squarefree_part(const UniPoly<Rational>& p) {
    if (p.degree() <= 0) return p;
    UniPoly<Rational> g = gcd(p, p.derivative());
    return primitive_part(divmod(p, g).first);
}

template <class R>
std::string to_string(const UniPoly<R>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (Ring<R>::is_zero(p[i])) continue;
        if (!s.empty()) s += " + ";
        std::string c;
        if constexpr (std::is_same_v<R, Rational>) c = to_string(p[i]);
        else c = "(" + p[i].str() + ")";
        s += c;
        if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

} // namespace isingmaps
