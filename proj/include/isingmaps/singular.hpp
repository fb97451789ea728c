#pragma once

#include <optional>
#include <string>
#include <vector>

#include "puiseux.hpp"
#include "resultant.hpp"
#include "series.hpp"
#include "sturm.hpp"

namespace isingmaps {

/// A value that is exact when possible, always with a real approximation.
struct Number {
    std::optional<Rational> exact;
    Real value;

    static Number of(const Rational& q, mpfr_prec_t prec = Real::default_precision()) { return {q, Real(q, prec)}; }
    static Number of(Real r) { return {std::nullopt, std::move(r)}; }
    bool is_exact() const { return exact.has_value(); }
    /// "p/q" when exact, decimal otherwise.
    std::string str(int digits = 30) const { return exact ? to_string(*exact) : value.str(digits); }
};

// ---------------------------------------------------------------- characteristic factors

template <class R>
struct CharFactorsOf {
    UniPoly<R> Q1, Q2;
};
using CharFactors = CharFactorsOf<Rational>;

/// Q1 = D = (1+3cuS)(1−3cuS) and Q2 = D·N − 2S·D′·N + S·D·N′.
template <class R>
CharFactorsOf<R> char_factors(const ModelPoint<R>& m) {
    auto [N, D] = lagrangian_numer_denom(m);
    const UniPoly<R> S = UniPoly<R>::x(m.nu);
    const UniPoly<R> Np = N.derivative(), Dp = D.derivative();
    const R two = m.lift(2);
    UniPoly<R> Q2 = D * N - S * Dp * N * two + S * D * Np;
    // numerator of φ − Sφ′ for φ = D²/N, expanded independently
    UniPoly<R> numer = D * D * N - S * (D * Dp * N * two - D * D * Np);
    if (D * Q2 != numer) throw FactorizationMismatch("Q1*Q2 differs from the numerator of phi - S*phi'");
    return {D, Q2};
}

inline CharFactors char_factors(const IsingParams& p) {
    p.validate();
    return char_factors(exact_point(p));
}

// ---------------------------------------------------------------- closed forms at c = 1

/// ρ_ν for ν < 4, written in r = √ν.
template <class K>
K rho_branch_below(const K& r) {
    const K nu = r * r, one(1);
    const K a = one + r, b = one + nu;
    return K(2) * (one + K(2) * r) / (K(9) * a * a * b * b);
}

/// ρ_ν for ν ≥ 4.
template <class K>
K rho_branch_above(const K& nu) {
    const K w = K(1) - nu * nu;
    return (K(3) * nu * nu - K(8)) / (K(36) * w * w);
}

/// S(ν, ρ_ν) for ν < 4, in r = √ν.
template <class K>
K s_branch_below(const K& r) {
    const K one(1);
    return one / (K(3) * (r + one) * (r * r + one));
}

/// S(ν, ρ_ν) for ν ≥ 4.
template <class K>
K s_branch_above(const K& nu) {
    return K(1) / (K(3) * (nu * nu - K(1)));
}

namespace detail {

template <class F, class G>
Number closed_form(const Rational& nu, mpfr_prec_t prec, F below, G above) {
    if (nu <= 0) throw InvalidArgument("nu must be positive");
    if (nu >= 4) return Number::of(above(nu), prec);
    if (auto r = exact_sqrt(nu)) return Number::of(below(*r), prec);
    return Number::of(below(sqrt(Real(nu, prec))));
}

} // namespace detail

inline Number rho_closed_form(const Rational& nu, mpfr_prec_t prec = Real::default_precision()) {
    return detail::closed_form(
        nu, prec, [](const auto& r) { return rho_branch_below(r); }, [](const auto& v) { return rho_branch_above(v); });
}

inline Number s_at_rho_closed_form(const Rational& nu, mpfr_prec_t prec = Real::default_precision()) {
    return detail::closed_form(
        nu, prec, [](const auto& r) { return s_branch_below(r); }, [](const auto& v) { return s_branch_above(v); });
}

// ---------------------------------------------------------------- cancelling polynomial

/// z·A(S) − B(S) = 0 with A = D²/g, B = S·N/g and g the removed common factor.
struct CancellingPolynomial {
    UniPoly<Rational> A, B, removed;

    int degree() const { return std::max(A.degree(), B.degree()); }

    /// Coefficients in S, each a polynomial in z.
    UniPoly<UniPoly<Rational>> in_S() const {
        std::vector<UniPoly<Rational>> cs;
        for (int k = 0; k <= degree(); ++k)
            cs.push_back(UniPoly<Rational>{-B.coeff(k, Rational(0)), A.coeff(k, Rational(0))});
        return UniPoly<UniPoly<Rational>>(std::move(cs));
    }

    /// P(ρ − Z, s0 + Y) as c[i][j] · Y^i Z^j, exact.
    BiPoly<Rational> shifted(const Rational& rho, const Rational& s0) const {
        const UniPoly<Rational> As = A.taylor_shift(s0), Bs = B.taylor_shift(s0);
        BiPoly<Rational> P;
        for (int i = 0; i <= degree(); ++i) {
            P.add(i, 0, rho * As.coeff(i, 0) - Bs.coeff(i, 0), Rational(0));
            P.add(i, 1, -As.coeff(i, 0), Rational(0));
        }
        return P;
    }

    /// Same shift at real (ρ, s0).
    BiPoly<Complex> shifted(const Real& rho, const Real& s0) const {
        const mpfr_prec_t prec = rho.precision();
        auto lift = [&](const UniPoly<Rational>& p) { return p.map<Real>([&](const Rational& q) { return Real(q, prec); }); };
        const UniPoly<Real> As = lift(A).taylor_shift(s0), Bs = lift(B).taylor_shift(s0);
        const Complex zero(0L, prec);
        BiPoly<Complex> P;
        const Real rz(0L, prec);
        for (int i = 0; i <= degree(); ++i) {
            P.add(i, 0, Complex(rho * As.coeff(i, rz) - Bs.coeff(i, rz)), zero);
            P.add(i, 1, Complex(-As.coeff(i, rz)), zero);
        }
        return P;
    }
};

/// Cleared form z·D(S)² − S·N(S) at an exact point. With `reduce`, the
/// squarefree part of gcd(D², S·N) is divided out (nontrivial only at c = 1).
inline CancellingPolynomial cancelling_polynomial(const IsingParams& p, bool reduce = true) {
    p.validate();
    auto [N, D] = lagrangian_numer_denom(exact_point(p));
    const UniPoly<Rational> A = D * D, B = UniPoly<Rational>::x(Rational(0)) * N;
    if (!reduce) return {A, B, UniPoly<Rational>(Rational(1))};
    UniPoly<Rational> g = squarefree_part(gcd(A, B));
    return {poly_exact_div(A, g), poly_exact_div(B, g), g};
}

/// Discriminant with respect to S of the (reduced) cancelling polynomial, a polynomial in z.
inline UniPoly<Rational> discriminant_in_z(const IsingParams& p, bool reduce = true) {
    return discriminant(cancelling_polynomial(p, reduce).in_S());
}

/// Discriminant of the unreduced z·D² − S·N over any coefficient ring
/// (e.g. ParamPoly for the fully symbolic result).
template <class R>
UniPoly<R> discriminant_in_z(const ModelPoint<R>& m) {
    auto [N, D] = lagrangian_numer_denom(m);
    const UniPoly<R> A = D * D, B = UniPoly<R>::x(m.nu) * N;
    const R zero = Ring<R>::zero(m.nu);
    std::vector<UniPoly<R>> cs;
    for (int k = 0; k <= std::max(A.degree(), B.degree()); ++k)
        cs.push_back(UniPoly<R>{-B.coeff(k, zero), A.coeff(k, zero)});
    return discriminant(UniPoly<UniPoly<R>>(std::move(cs)));
}

/// P₁ = 36(ν²−1)²z − 3ν² + 8.
inline UniPoly<Rational> disc_factor_P1(const Rational& nu) {
    const Rational w = nu * nu - 1;
    return {8 - 3 * nu * nu, 36 * w * w};
}

/// P₂ = 81(ν²−1)²(ν+1)²z² + 36(3ν−1)(ν+1)²z − 16ν + 4.
inline UniPoly<Rational> disc_factor_P2(const Rational& nu) {
    const Rational w = nu * nu - 1, v = nu + 1;
    return {4 - 16 * nu, 36 * (3 * nu - 1) * v * v, 81 * w * w * v * v};
}

/// P₃(ν, z) = P₂(−ν, z).
inline UniPoly<Rational> disc_factor_P3(const Rational& nu) { return disc_factor_P2(-nu); }

// ---------------------------------------------------------------- radius

struct SingularityReport {
    Rational nu, c;
    Number rho, mu, s_at_rho;
    Real rho_lo, rho_hi;              // certified enclosure of ρ
    Rational s_lo, s_hi;              // isolating interval of S(ρ) (equal when exact)
    int sturm_count = 0;              // roots of Q2 in (0, bound]
    Rational bound;                   // a-priori upper bound on S(ρ)
    std::optional<Rational> exponent; // dominant singular exponent of S
    bool residual_ok = false;         // every Puiseux branch passed its substitution check
    bool uniqueness_checked = false;
    Real min_modulus_gap;             // min over other discriminant roots of ||r| − ρ|/ρ
    long precision_bits = 192;
    std::vector<std::string> warnings;
};

struct RadiusOptions {
    Rational tol{Rational(1, 1000000) * Rational(1, 1000000) * Rational(1, 1000000) * Rational(1, 1000000)};
    bool allow_outside_region = false;
    bool with_exponent = true;
    bool with_uniqueness = true;
    int puiseux_terms = 3;
};

namespace detail {

inline Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// z(S) = S·N/D² with the common factor removed, as (numerator, denominator).
inline std::pair<UniPoly<Rational>, UniPoly<Rational>> lagrangian_fraction(const IsingParams& p) {
    auto [N, D] = lagrangian_numer_denom(exact_point(p));
    UniPoly<Rational> num = UniPoly<Rational>::x(Rational(0)) * N, den = D * D;
    UniPoly<Rational> g = gcd(num, den);
    return {poly_exact_div(num, g), poly_exact_div(den, g)};
}

inline Rational pow2_neg(long bits) { return Rational(1) / Rational(pow(Integer(2), unsigned(bits))); }

/// Puiseux branches of S at (ρ, S(ρ)); exact shift when both are rational.
inline std::vector<PuiseuxExpansion> branches_at(const CancellingPolynomial& P, const SingularityReport& r, int terms,
                                                 mpfr_prec_t prec) {
    if (r.rho.exact && r.s_at_rho.exact)
        return newton_polygon_expand(P.shifted(*r.rho.exact, *r.s_at_rho.exact), terms, prec);
    return newton_polygon_expand(P.shifted(r.rho.value.with_precision(prec), r.s_at_rho.value.with_precision(prec)),
                                 terms);
}

} // namespace detail

/// Dominant singularity of S(ν, c, z): S(ρ) is the smallest root of Q2 in
/// (0, 1/(3c²|1−ν²|)], ρ = z(S(ρ)) and μ = c·ρ.
inline SingularityReport radius_numeric(const IsingParams& params, const RadiusOptions& opt = {}) {
    params.validate();
    if (opt.tol <= 0) throw InvalidArgument("tol must be positive");
    const long prec = params.precision_bits;
    SingularityReport rep;
    rep.nu = params.nu;
    rep.c = params.c;
    rep.precision_bits = prec;
    if (detail::abs_q(params.c - 1) > Rational(1, 4)) {
        if (!opt.allow_outside_region)
            throw InvalidArgument("c is outside the validated region |c - 1| <= 1/4 (override to proceed)");
        rep.warnings.push_back("c outside the validated region |c - 1| <= 1/4; no guarantee on the dominant singularity");
    }
    const Rational u = 1 - params.nu * params.nu;
    const UniPoly<Rational> Q2 = char_factors(params).Q2;
    rep.bound = u != 0 ? Rational(1) / (3 * params.c * params.c * detail::abs_q(u)) : cauchy_bound(Q2);
    auto roots = isolate_real_roots(Q2, Rational(0), rep.bound);
    rep.sturm_count = int(roots.size());
    if (roots.empty())
        throw NoRootInRange("Q2 has no root in (0, " + to_string(rep.bound) + "]; outside the validated parameter region");
    RootInterval iv = roots.front();
    auto [zn, zd] = detail::lagrangian_fraction(params);
    if (auto s = rational_root_in(Q2, iv)) {
        rep.s_lo = rep.s_hi = *s;
        rep.s_at_rho = Number::of(*s, prec);
        Rational rho = zn.eval(*s) / zd.eval(*s);
        rep.rho = Number::of(rho, prec);
        rep.rho_lo = rep.rho_hi = rep.rho.value;
        rep.mu = Number::of(params.c * rho, prec);
    } else {
        const Rational width = std::min(opt.tol * opt.tol, detail::pow2_neg(prec));
        iv = refine_root(Q2, iv, width);
        rep.s_lo = iv.lo;
        rep.s_hi = iv.hi;
        Real::PrecisionGuard guard(prec);
        const Real lo(iv.lo, prec), hi(iv.hi, prec), w(iv.width(), prec);
        auto z = [&](const Real& s) { return zn.eval(s) / zd.eval(s); };
        auto zp = [&](const Real& s) {
            const Real a = zd.eval(s);
            return (zn.derivative().eval(s) * a - zn.eval(s) * zd.derivative().eval(s)) / (a * a);
        };
        rep.rho_lo = std::max(z(lo), z(hi));
        rep.rho_hi = std::min(z(lo) + abs(zp(lo)) * w, z(hi) + abs(zp(hi)) * w);
        if (rep.rho_hi < rep.rho_lo) rep.rho_hi = rep.rho_lo;
        const Real s_mid = (lo + hi) / 2;
        rep.s_at_rho = Number::of(s_mid);
        rep.rho = Number::of((rep.rho_lo + rep.rho_hi) / 2);
        rep.mu = Number::of(rep.rho.value * Real(params.c, prec));
        if (Real(opt.tol, prec) < rep.rho_hi - rep.rho_lo)
            throw PrecisionExhausted("rho enclosure wider than tol at " + std::to_string(prec) + " bits");
    }
    const CancellingPolynomial P = cancelling_polynomial(params);
    if (opt.with_exponent) {
        auto at = [&](long bits) {
            auto bs = detail::branches_at(P, rep, opt.puiseux_terms, bits);
            bool ok = true;
            for (auto& b : bs) ok = ok && b.residual_ok;
            return std::make_pair(smallest_fractional_exponent(bs), ok);
        };
        auto [e1, ok1] = at(prec);
        auto [e2, ok2] = at(2 * prec);
        if (e1 != e2) throw PrecisionExhausted("Puiseux exponents differ between " + std::to_string(prec) + " and " +
                                               std::to_string(2 * prec) + " bits");
        if (!e1) throw DegenerateBranch("no ramified branch through (rho, S(rho))");
        rep.exponent = e1;
        rep.residual_ok = ok1 && ok2;
    }
    if (opt.with_uniqueness) {
        const UniPoly<Rational> disc = discriminant(P.in_S());
        const Real rho = rep.rho.value;
        Real gap = Real::infinity(prec);
        bool has_rho = false;
        const Real same = rho * Real::from_double(1e-6, prec);
        for (auto& r : polynomial_roots(disc, prec)) {
            const Complex d = r.value - Complex(rho);
            if (abs(d) < same) {
                has_rho = true;
                continue;
            }
            gap = std::min(gap, abs(abs(r.value) - rho) / rho);
        }
        rep.min_modulus_gap = gap;
        rep.uniqueness_checked = has_rho && gap >= Real::from_double(1e-6, prec);
        if (!has_rho) rep.warnings.push_back("rho is not a root of the discriminant");
    }
    return rep;
}

/// Smallest non-integer Puiseux exponent of S at its dominant singularity.
inline Rational dominant_exponent(const IsingParams& params) {
    RadiusOptions opt;
    opt.with_uniqueness = false;
    return *radius_numeric(params, opt).exponent;
}

/// Puiseux branches of S through (ρ, S(ρ)) at the given precision.
inline std::vector<PuiseuxExpansion> puiseux_at_rho(const IsingParams& params, int max_terms) {
    RadiusOptions opt;
    opt.with_exponent = false;
    opt.with_uniqueness = false;
    auto rep = radius_numeric(params, opt);
    auto bs = detail::branches_at(cancelling_polynomial(params), rep, max_terms, params.precision_bits);
    for (auto& b : bs) b.center = {Complex(rep.rho.value), Complex(rep.s_at_rho.value)};
    return bs;
}

} // namespace isingmaps
