#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "real.hpp"

namespace isingmaps {

/// Exponent pair of ν^nu · c^c. c may be negative.
struct Monomial {
    int nu = 0;
    int c = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend Monomial operator*(Monomial a, Monomial b) { return {a.nu + b.nu, a.c + b.c}; }
};

/// Polynomial in ν, Laurent polynomial in c, rational coefficients.
/// Sparse; terms kept sorted by (nu, c) ascending with no zero coefficients.
class ParamPoly {
public:
    using Term = std::pair<Monomial, Rational>;

    ParamPoly() = default;
    ParamPoly(long v) : ParamPoly(Rational(v)) {}
    ParamPoly(int v) : ParamPoly(Rational(v)) {}
    ParamPoly(const Rational& q) {
        if (q != 0) terms_.push_back({{0, 0}, q});
    }
    static ParamPoly monomial(const Rational& coef, int nu_exp, int c_exp) {
        if (nu_exp < 0) throw InvalidArgument("negative power of nu");
        ParamPoly p;
        if (coef != 0) p.terms_.push_back({{nu_exp, c_exp}, coef});
        return p;
    }
    static ParamPoly nu() { return monomial(1, 1, 0); }
    static ParamPoly c() { return monomial(1, 0, 1); }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    static ParamPoly from_terms(std::vector<Term> t) {
        std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        ParamPoly p;
        for (auto& [m, q] : t) {
            if (m.nu < 0) throw InvalidArgument("negative power of nu");
            if (!p.terms_.empty() && p.terms_.back().first == m)
                p.terms_.back().second += q;
            else
                p.terms_.push_back({m, q});
            if (p.terms_.back().second == 0) p.terms_.pop_back();
        }
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Monomial{}); }
    Rational coeff(int nu_exp, int c_exp) const {
        Monomial m{nu_exp, c_exp};
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return t.first < k; });
        return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
    }
    int deg_nu() const { return terms_.empty() ? -1 : terms_.back().first.nu; }
    int min_deg_c() const {
        int r = 0;
        bool first = true;
        for (auto& t : terms_) r = first ? (first = false, t.first.c) : std::min(r, t.first.c);
        return r;
    }
    int max_deg_c() const {
        int r = 0;
        bool first = true;
        for (auto& t : terms_) r = first ? (first = false, t.first.c) : std::max(r, t.first.c);
        return r;
    }
    bool has_integer_coefficients() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return denominator(t.second) == 1; });
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) { return merge(a, b, false); }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return merge(a, b, true); }
    friend ParamPoly operator-(const ParamPoly& a) {
        ParamPoly r = a;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    ParamPoly& operator+=(const ParamPoly& b) { return *this = *this + b; }
    ParamPoly& operator-=(const ParamPoly& b) { return *this = *this - b; }
    ParamPoly& operator*=(const ParamPoly& b) { return *this = *this * b; }

    friend ParamPoly operator*(const ParamPoly& a, const Rational& q) {
        if (q == 0) return {};
        ParamPoly r = a;
        for (auto& t : r.terms_) t.second *= q;
        return r;
    }
    friend ParamPoly operator*(const Rational& q, const ParamPoly& a) { return a * q; }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1 && a.terms_[0].first == Monomial{}) return b * a.terms_[0].second;
        if (b.size() == 1 && b.terms_[0].first == Monomial{}) return a * b.terms_[0].second;
        return multiply(a, b);
    }

    /// Multiplies by c^k.
    ParamPoly shift_c(int k) const {
        ParamPoly r = *this;
        for (auto& t : r.terms_) t.first.c += k;
        return r;
    }

    /// c·∂/∂c.
    ParamPoly theta_c() const {
        std::vector<Term> out;
        for (auto& [m, q] : terms_)
            if (m.c != 0) out.push_back({m, q * m.c});
        return from_terms(std::move(out));
    }

    Rational eval(const Rational& nu_v, const Rational& c_v) const {
        if (c_v == 0 && min_deg_c() < 0) throw InvalidArgument("Laurent polynomial evaluated at c = 0");
        Rational r = 0;
        for (auto& [m, q] : terms_) r += q * pow(nu_v, m.nu) * pow(c_v, m.c);
        return r;
    }
    Real eval(const Real& nu_v, const Real& c_v) const {
        Real r(0L, std::max(nu_v.precision(), c_v.precision()));
        for (auto& [m, q] : terms_) r += Real(q, r.precision()) * pow(nu_v, long(m.nu)) * pow(c_v, long(m.c));
        return r;
    }

    /// Canonical text: terms by descending ν then descending c, e.g.
    /// "9*nu^4*c^2 + 8*nu^2 + 1"; negative c powers print as c^-1.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, q] = *it;
            Rational a = abs(q);
            bool first = it == terms_.rbegin();
            if (first)
                s += q < 0 ? "-" : "";
            else
                s += q < 0 ? " - " : " + ";
            std::string mono;
            auto add = [&](const std::string& f) { mono += (mono.empty() ? "" : "*") + f; };
            if (m.nu == 1) add("nu");
            else if (m.nu > 1) add("nu^" + std::to_string(m.nu));
            if (m.c == 1) add("c");
            else if (m.c != 0) add("c^" + std::to_string(m.c));
            if (mono.empty())
                s += to_string(a);
            else if (a == 1)
                s += mono;
            else
                s += to_string(a) + "*" + mono;
        }
        return s;
    }

    /// Exact quotient a / b; throws NonZeroRemainder if b does not divide a.
    static ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b) {
        if (b.is_zero()) throw NonZeroRemainder("division by the zero polynomial");
        if (a.is_zero()) return {};
        if (b.size() == 1) {
            auto [bm, bq] = b.terms_[0];
            std::vector<Term> out;
            out.reserve(a.size());
            for (auto& [m, q] : a.terms_) {
                if (m.nu < bm.nu) throw NonZeroRemainder("monomial division leaves a remainder");
                out.push_back({{m.nu - bm.nu, m.c - bm.c}, q / bq});
            }
            ParamPoly r;
            r.terms_ = std::move(out);
            return r;
        }
        // Lex order on (nu, c); quotient monomials are confined to a box.
        const int max_nu = a.deg_nu() - b.deg_nu();
        const int lo_c = a.min_deg_c() - b.min_deg_c();
        const int hi_c = a.max_deg_c() - b.max_deg_c();
        const Term& lb = b.terms_.back();
        std::vector<Term> q;
        ParamPoly r = a;
        while (!r.is_zero()) {
            const Term& lr = r.terms_.back();
            Monomial m{lr.first.nu - lb.first.nu, lr.first.c - lb.first.c};
            if (m.nu < 0 || m.nu > max_nu || m.c < lo_c || m.c > hi_c)
                throw NonZeroRemainder("polynomial division leaves a remainder");
            Rational coef = lr.second / lb.second;
            q.push_back({m, coef});
            r -= monomial(coef, m.nu, m.c) * b;
        }
        return from_terms(std::move(q));
    }

private:
    static ParamPoly merge(const ParamPoly& a, const ParamPoly& b, bool negate_b) {
        ParamPoly r;
        r.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.push_back({j->first, negate_b ? Rational(-j->second) : j->second});
                ++j;
            } else {
                Rational s = negate_b ? Rational(i->second - j->second) : Rational(i->second + j->second);
                if (s != 0) r.terms_.push_back({i->first, std::move(s)});
                ++i, ++j;
            }
        }
        return r;
    }

    /// Common-denominator form: a = num / den with integer num.
    static Integer integer_form(const ParamPoly& a, std::vector<Integer>& num) {
        Integer den = 1;
        for (auto& t : a.terms_) {
            const Integer& d = denominator(t.second);
            if (d != 1) den = boost::multiprecision::lcm(den, d);
        }
        num.clear();
        num.reserve(a.size());
        for (auto& t : a.terms_) num.push_back(numerator(t.second) * (den / denominator(t.second)));
        return den;
    }

    static ParamPoly multiply(const ParamPoly& a, const ParamPoly& b) {
        std::vector<Integer> an, bn;
        Integer ad = integer_form(a, an), bd = integer_form(b, bn);
        const int nu_span = a.deg_nu() + b.deg_nu() + 1;
        const int c_lo = a.min_deg_c() + b.min_deg_c();
        const int c_span = a.max_deg_c() + b.max_deg_c() - c_lo + 1;
        const std::size_t cells = std::size_t(nu_span) * std::size_t(c_span);
        std::vector<Term> out;
        if (cells <= 8 * a.size() * b.size() + 64) {
            std::vector<Integer> acc(cells);
            std::vector<char> used(cells, 0);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const Monomial& ma = a.terms_[i].first;
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const Monomial& mb = b.terms_[j].first;
                    std::size_t k = std::size_t(ma.nu + mb.nu) * std::size_t(c_span) + std::size_t(ma.c + mb.c - c_lo);
                    mpz_addmul(acc[k].backend().data(), an[i].backend().data(), bn[j].backend().data());
                    used[k] = 1;
                }
            }
            Integer den = ad * bd;
            for (std::size_t k = 0; k < cells; ++k) {
                if (!used[k] || acc[k] == 0) continue;
                Monomial m{int(k / std::size_t(c_span)), int(k % std::size_t(c_span)) + c_lo};
                out.push_back({m, Rational(acc[k], den)});
            }
            ParamPoly r;
            r.terms_ = std::move(out);  // dense scan is already in (nu, c) order
            return r;
        }
        out.reserve(a.size() * b.size());
        for (auto& [ma, qa] : a.terms_)
            for (auto& [mb, qb] : b.terms_) out.push_back({ma * mb, qa * qb});
        return from_terms(std::move(out));
    }

    std::vector<Term> terms_;
};

inline ParamPoly exact_div(const ParamPoly& a, const ParamPoly& b) { return ParamPoly::divide_exact(a, b); }

inline ParamPoly pow(const ParamPoly& p, int e) {
    if (e < 0) throw InvalidArgument("negative power of a ParamPoly");
    ParamPoly r(1), b = p;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

} // namespace isingmaps
