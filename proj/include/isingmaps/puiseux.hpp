#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "polyroots.hpp"
#include "rational.hpp"

namespace isingmaps {

/// Dense bivariate polynomial; c[i][j] multiplies Y^i Z^j.
template <class K>
struct BiPoly {
    std::vector<std::vector<K>> c;

    int deg_y() const { return int(c.size()) - 1; }
    int deg_z() const {
        int d = -1;
        for (auto& row : c) d = std::max(d, int(row.size()) - 1);
        return d;
    }
    K at(int i, int j, const K& zero) const {
        if (i < 0 || i >= int(c.size()) || j < 0 || j >= int(c[std::size_t(i)].size())) return zero;
        return c[std::size_t(i)][std::size_t(j)];
    }
    void add(int i, int j, const K& v, const K& zero) {
        if (i >= int(c.size())) c.resize(std::size_t(i) + 1);
        auto& row = c[std::size_t(i)];
        if (j >= int(row.size())) row.resize(std::size_t(j) + 1, zero);
        row[std::size_t(j)] = row[std::size_t(j)] + v;
    }
    template <class F>
    auto map(F f) const {
        using T = decltype(f(c[0][0]));
        BiPoly<T> r;
        for (auto& row : c) {
            r.c.emplace_back();
            for (auto& v : row) r.c.back().push_back(f(v));
        }
        return r;
    }
};

/// One Puiseux branch y(Z) = Σ coefficient·Z^exponent at the expansion center.
struct PuiseuxTerm {
    Complex coefficient;
    Rational exponent;
};

struct PuiseuxExpansion {
    std::pair<Complex, Complex> center;  // (z̃, y(0)) in the original coordinates, informational
    std::vector<PuiseuxTerm> terms;
    long ramification = 1;               // κ: exponents are multiples of 1/κ
    bool terminates = false;             // the finite sum is an exact branch
    bool residual_ok = false;            // P(Z, y(Z)) = O(Z^(last + 1/κ)) verified
    int multiplicity = 1;                // coincident branches represented by this one
};

namespace detail {

using CBi = BiPoly<Complex>;

inline Real bi_scale(const CBi& p, mpfr_prec_t prec) {
    Real m(0L, prec);
    for (auto& row : p.c)
        for (auto& v : row) m = std::max(m, abs(v));
    return m;
}

/// Zeroes every coefficient below tol·scale (exact zeros stay exact).
inline void chop(CBi& p, const Real& rel_tol, mpfr_prec_t prec) {
    Real thr = bi_scale(p, prec) * rel_tol;
    for (auto& row : p.c)
        for (auto& v : row)
            if (!v.is_zero() && abs(v) <= thr) v = Complex(0L, prec);
}

inline bool nz(const CBi& p, int i, int j) {
    return i < int(p.c.size()) && j < int(p.c[std::size_t(i)].size()) && !p.c[std::size_t(i)][std::size_t(j)].is_zero();
}

/// Lowest Y-power present in every term.
inline int y_order(const CBi& p) {
    for (int i = 0; i < int(p.c.size()); ++i)
        for (auto& v : p.c[std::size_t(i)])
            if (!v.is_zero()) return i;
    return -1;
}

inline CBi drop_y(const CBi& p, int k) {
    CBi r;
    r.c.assign(p.c.begin() + k, p.c.end());
    return r;
}

struct Edge {
    int i1, j1, i2, j2;
    long p, q;  // slope j-drop / i-run = p/q
};

/// Lower-hull edges from (0, j0) to (i*, 0), left to right.
inline std::vector<Edge> lower_hull(const CBi& P) {
    // lowest j for each i
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i < int(P.c.size()); ++i)
        for (int j = 0; j < int(P.c[std::size_t(i)].size()); ++j)
            if (!P.c[std::size_t(i)][std::size_t(j)].is_zero()) {
                pts.push_back({i, j});
                break;
            }
    int istar = -1;
    for (auto [i, j] : pts)
        if (j == 0) {
            istar = i;
            break;
        }
    std::vector<Edge> edges;
    if (istar <= 0 || pts.empty() || pts.front().first != 0) return edges;
    int ci = 0, cj = pts.front().second;
    while (ci < istar) {
        // steepest descent: minimize slope (j − cj)/(i − ci), take farthest point on ties
        int bi = -1, bj = 0;
        for (auto [i, j] : pts) {
            if (i <= ci || i > istar) continue;
            if (bi < 0) {
                bi = i, bj = j;
                continue;
            }
            long lhs = long(j - cj) * (bi - ci), rhs = long(bj - cj) * (i - ci);
            if (lhs < rhs || (lhs == rhs && i > bi)) bi = i, bj = j;
        }
        long dj = cj - bj, di = bi - ci;
        long g = std::gcd(dj, di);
        edges.push_back({ci, cj, bi, bj, dj / g, di / g});
        ci = bi, cj = bj;
    }
    return edges;
}

/// W^(−v) · P(W^q, W^p (t + Y)).
inline CBi substitute(const CBi& P, const Edge& e, const Complex& t, mpfr_prec_t prec) {
    const Complex zero(0L, prec);
    long v = e.q * e.j1 + e.p * e.i1;
    CBi r;
    // powers of t and binomials
    for (int i = 0; i < int(P.c.size()); ++i) {
        std::vector<Complex> tp(std::size_t(i) + 1, Complex(1L, prec));
        for (int k = 1; k <= i; ++k) tp[std::size_t(k)] = tp[std::size_t(k - 1)] * t;
        Rational binom = 1;
        std::vector<Rational> bc;
        for (int k = 0; k <= i; ++k) {
            bc.push_back(binom);
            binom = binom * Rational(i - k) / Rational(k + 1);
        }
        for (int j = 0; j < int(P.c[std::size_t(i)].size()); ++j) {
            const Complex& a = P.c[std::size_t(i)][std::size_t(j)];
            if (a.is_zero()) continue;
            long w = e.q * j + e.p * i - v;
            // (t + Y)^i = Σ_k C(i,k) t^(i−k) Y^k
            for (int k = 0; k <= i; ++k)
                r.add(k, int(w), a * tp[std::size_t(i - k)] * Complex(bc[std::size_t(k)], prec), zero);
        }
    }
    return r;
}

struct Walker {
    mpfr_prec_t prec;
    int max_terms;
    Real rel_tol;
    std::vector<PuiseuxExpansion> out;

    void expand(CBi P, std::vector<PuiseuxTerm> terms, long kappa, int mult) {
        chop(P, rel_tol, prec);
        int s = y_order(P);
        if (s < 0) throw DegenerateBranch("polynomial vanished during the expansion");
        if (s > 0) {
            // Y^s divides P: the current truncation is itself an exact branch
            PuiseuxExpansion b;
            b.terms = terms;
            b.ramification = kappa;
            b.terminates = true;
            b.multiplicity = s;
            out.push_back(std::move(b));
            P = drop_y(P, s);
        }
        if (nz(P, 0, 0)) return;  // no further branch through the origin
        if (int(terms.size()) >= max_terms) {
            PuiseuxExpansion b;
            b.terms = terms;
            b.ramification = kappa;
            b.multiplicity = mult - s;
            out.push_back(std::move(b));
            return;
        }
        auto edges = lower_hull(P);
        if (edges.empty()) throw DegenerateBranch("no admissible Newton-polygon slope (Y-independent factor)");
        Rational last = terms.empty() ? Rational(0) : terms.back().exponent;
        for (auto& e : edges) {
            // characteristic polynomial in τ = t^q
            std::vector<Complex> chi;
            for (int i = e.i1; i <= e.i2; i += int(e.q)) {
                int j = e.j1 - int(e.p) * (i - e.i1) / int(e.q);
                chi.push_back(P.at(i, j, Complex(0L, prec)));
            }
            for (auto& r : polynomial_roots(chi)) {
                if (r.value.is_zero()) continue;
                Complex t = root(r.value, e.q);
                std::vector<PuiseuxTerm> next = terms;
                Rational expo = last + Rational(e.p) / Rational(kappa * e.q);
                next.push_back({t, expo});
                expand(substitute(P, e, t, prec), std::move(next), kappa * e.q, r.multiplicity);
            }
        }
    }
};

/// P(W^κ, y(W)) truncated below W^(order+1).
inline std::vector<Complex> residual_series(const CBi& P, const PuiseuxExpansion& b, long order, mpfr_prec_t prec) {
    const Complex zero(0L, prec);
    std::vector<Complex> y(std::size_t(order) + 1, zero);
    for (auto& t : b.terms) {
        Rational e = t.exponent * b.ramification;
        long k = numerator(e).convert_to<long>();
        if (k <= order) y[std::size_t(k)] += t.coefficient;
    }
    auto mul = [&](const std::vector<Complex>& a, const std::vector<Complex>& c) {
        std::vector<Complex> r(std::size_t(order) + 1, zero);
        for (long i = 0; i <= order; ++i) {
            if (a[std::size_t(i)].is_zero()) continue;
            for (long j = 0; i + j <= order; ++j) r[std::size_t(i + j)] += a[std::size_t(i)] * c[std::size_t(j)];
        }
        return r;
    };
    std::vector<Complex> total(std::size_t(order) + 1, zero), ypow(std::size_t(order) + 1, zero);
    ypow[0] = Complex(1L, prec);
    for (int i = 0; i < int(P.c.size()); ++i) {
        if (i > 0) ypow = mul(ypow, y);
        for (int j = 0; j < int(P.c[std::size_t(i)].size()); ++j) {
            const Complex& a = P.c[std::size_t(i)][std::size_t(j)];
            long sh = long(j) * b.ramification;
            if (a.is_zero() || sh > order) continue;
            for (long k = 0; k + sh <= order; ++k) total[std::size_t(k + sh)] += a * ypow[std::size_t(k)];
        }
    }
    return total;
}

} // namespace detail

/// Newton–Puiseux expansion at the origin of every branch through (0, 0).
/// Returns one representative per conjugacy class of branches; coefficients
/// of the input are used as given (exact zeros are structural zeros).
inline std::vector<PuiseuxExpansion> newton_polygon_expand(const BiPoly<Complex>& P, int max_terms) {
    if (max_terms < 1) throw InvalidArgument("max_terms must be positive");
    mpfr_prec_t prec = 53;
    for (auto& row : P.c)
        for (auto& v : row) prec = std::max(prec, v.precision());
    bool y_free = true;  // P(0, Y) ≡ 0
    for (auto& row : P.c)
        if (!row.empty() && !row[0].is_zero()) y_free = false;
    if (y_free) throw DegenerateBranch("P(0, Y) vanishes identically (Y-independent factor)");
    detail::Walker w{prec, max_terms, epsilon_bits(prec / 2, prec), {}};
    w.expand(P, {}, 1, 1);
    if (w.out.empty()) throw DegenerateBranch("no branch passes through the origin");
    // residual check in W = Z^(1/κ)
    Real scale = detail::bi_scale(P, prec);
    for (auto& b : w.out) {
        if (b.terms.empty()) {
            b.residual_ok = true;  // y ≡ 0 branch, exact factor
            continue;
        }
        long order = (b.terms.back().exponent * b.ramification).convert_to<long>();
        Real ymax(1L, prec);
        for (auto& t : b.terms) ymax = std::max(ymax, abs(t.coefficient));
        auto r = detail::residual_series(P, b, order, prec);
        Real bound = scale * pow(ymax, long(P.deg_y())) * epsilon_bits(prec / 3, prec);
        b.residual_ok = true;
        for (auto& v : r)
            if (abs(v) > bound) b.residual_ok = false;
    }
    return w.out;
}

/// Exact-input overload.
inline std::vector<PuiseuxExpansion> newton_polygon_expand(const BiPoly<Rational>& P, int max_terms,
                                                           mpfr_prec_t prec = Real::default_precision()) {
    return newton_polygon_expand(P.map([&](const Rational& q) { return Complex(q, prec); }), max_terms);
}

/// Smallest non-integer exponent over the given branches.
inline std::optional<Rational> smallest_fractional_exponent(const std::vector<PuiseuxExpansion>& bs) {
    std::optional<Rational> best;
    for (auto& b : bs)
        for (auto& t : b.terms)
            if (denominator(t.exponent) != 1 && (!best || t.exponent < *best)) best = t.exponent;
    return best;
}

} // namespace isingmaps
