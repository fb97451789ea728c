#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace isingmaps {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline int sign(const Rational& q) { return q.sign(); }

inline Rational pow(const Rational& q, int e) {
    if (e < 0) return Rational(1) / pow(q, -e);
    Rational r(1), b(q);
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

inline Integer floor_int(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer f = n / d;  // truncates toward zero
    if (n.sign() < 0 && f * d != n) f -= 1;
    return f;
}

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "3", "-3/4", "0.95", "1e-4", "2.5E+3" exactly.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { return InvalidArgument("not a rational literal: '" + std::string(s) + "'"); };
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw bad();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational a = parse_rational(s.substr(0, slash));
        Rational b = parse_rational(s.substr(slash + 1));
        if (b == 0) throw bad();
        return a / b;
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    int scale = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            any = true;
            if (seen_dot) --scale;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw bad();
        std::string_view ex = s.substr(i + 1);
        if (ex.empty()) throw bad();
        std::size_t j = 0;
        bool eneg = false;
        if (ex[0] == '+' || ex[0] == '-') eneg = ex[j++] == '-';
        if (j == ex.size()) throw bad();
        long e = 0;
        for (; j < ex.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(ex[j]))) throw bad();
            e = e * 10 + (ex[j] - '0');
            if (e > 100000) throw bad();
        }
        scale += eneg ? -int(e) : int(e);
    }
    // a leading 0 would make the integer parser read octal
    const auto nz = digits.find_first_not_of('0');
    Rational r{nz == std::string::npos ? Integer(0) : Integer(digits.substr(nz))};
    r *= pow(Rational(10), scale);
    return neg ? Rational(-r) : r;
}

/// Exact square root if q is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    Integer n = numerator(q), d = denominator(q);
    if (!mpz_perfect_square_p(n.backend().data()) || !mpz_perfect_square_p(d.backend().data()))
        return std::nullopt;
    return Rational(Integer(boost::multiprecision::sqrt(n)), Integer(boost::multiprecision::sqrt(d)));
}

/// Rational with the smallest denominator in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
    if (lo > hi) std::swap(lo, hi);
    Integer f = floor_int(lo);
    if (Rational(f) == lo) return lo;
    if (Rational(f + 1) <= hi) return Rational(f + 1);
    // lo, hi lie strictly inside (f, f+1)
    Rational inner = simplest_between(Rational(1) / (hi - Rational(f)), Rational(1) / (lo - Rational(f)));
    return Rational(f) + Rational(1) / inner;
}

} // namespace isingmaps
