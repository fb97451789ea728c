#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "truncated_series.hpp"

namespace isingmaps {

/// Model parameters ν (ν = e^{2β}) and c (c = e^h).
struct IsingParams {
    enum class Mode { Symbolic, NumericAtPoint };

    Rational nu{1};
    Rational c{1};
    Mode mode = Mode::Symbolic;
    long precision_bits = 192;

    static IsingParams symbolic() { return {}; }
    static IsingParams numeric(Rational nu, Rational c, long bits = 192) {
        IsingParams p{std::move(nu), std::move(c), Mode::NumericAtPoint, bits};
        p.validate();
        return p;
    }
    /// An exact rational point (used by the algebraic routines).
    static IsingParams point(Rational nu, Rational c) {
        IsingParams p{std::move(nu), std::move(c), Mode::Symbolic, 192};
        p.validate();
        return p;
    }
    bool numeric_mode() const { return mode == Mode::NumericAtPoint; }
    void validate() const {
        if (nu <= 0 || c <= 0) throw InvalidArgument("nu and c must be positive");
        if (precision_bits < 16) throw InvalidArgument("precision_bits must be at least 16");
        if (numeric_mode() && nu == 1)
            throw NumericModeAtNuOne("numeric mode is undefined at nu = 1 (the 1/(1-nu^2) prefactor is singular)");
    }
};

/// (ν, c) in a coefficient ring: symbols (ParamPoly), exact values or reals.
template <class R>
struct ModelPoint {
    R nu, c;
    R u() const { return Ring<R>::one(nu) - nu * nu; }
    R lift(const Rational& q) const { return Ring<R>::from_rational(q, nu); }
};

inline ModelPoint<ParamPoly> symbolic_point() { return {ParamPoly::nu(), ParamPoly::c()}; }
inline ModelPoint<Rational> exact_point(const IsingParams& p) { return {p.nu, p.c}; }
inline ModelPoint<Real> real_point(const IsingParams& p, long bits) {
    return {Real(p.nu, bits), Real(p.c, bits)};
}

template <class R>
struct Lagrangian {
    UniPoly<R> N, D;
};

/// N, D with z = S·N(S)/D(S)².
template <class R>
Lagrangian<R> lagrangian_numer_denom(const ModelPoint<R>& m) {
    const R u = m.u(), c2 = m.c * m.c, nu2 = m.nu * m.nu;
    const R zero = Ring<R>::zero(m.nu), one = Ring<R>::one(m.nu);
    const R u2 = u * u, u3 = u2 * u, u5 = u3 * u2;
    std::vector<R> n{one,
                     m.lift(-3) * nu2 * (c2 + one),
                     m.lift(-3) * c2 * u * (m.lift(3) * nu2 + m.lift(7)),
                     zero,
                     m.lift(135) * c2 * c2 * u3,
                     zero,
                     m.lift(-243) * c2 * c2 * c2 * u5};
    std::vector<R> d{one, zero, m.lift(-9) * c2 * u2};
    return {UniPoly<R>(std::move(n)), UniPoly<R>(std::move(d))};
}

/// s-degree groups of Pol_Z; entry [k][j] multiplies s^k z^j.
template <class R>
std::array<std::vector<R>, 8> pol_Z_groups(const ModelPoint<R>& m) {
    const R u = m.u(), c2 = m.c * m.c, nu2 = m.nu * m.nu;
    const R zero = Ring<R>::zero(m.nu);
    const R u2 = u * u, u3 = u2 * u, u4 = u2 * u2, c4 = c2 * c2;
    auto L = [&](long v) { return m.lift(v); };
    std::array<std::vector<R>, 8> g;
    g[7] = {L(405) * c4 * c2 * u4};
    g[6] = {L(351) * c4 * u3};
    g[5] = {L(-27) * c2 * u2 * (L(5) * c2 - nu2), L(-324) * c4 * u4};
    g[4] = {L(3) * c2 * u * (L(-3) * nu2 - L(47)), L(108) * c4 * u3};
    g[3] = {-(L(6) * c2 + L(15)) * nu2 - L(9) * c2, L(252) * u2 * c2};
    g[2] = {L(5), L(9) * u * (L(4) * c2 + nu2), L(-108) * c2 * u3};
    g[1] = {zero, L(3) * nu2 - L(8), L(-27) * u2 * c2};
    g[0] = {zero, zero, L(3) * u};
    return g;
}

/// S(z) with S = z·D(S)²/N(S), by order-doubling Newton on F(S) = S·N(S) − z·D(S)².
template <class R>
TruncatedSeries<R> solve_S(const ModelPoint<R>& m, int order) {
    if (order < 1) throw InvalidArgument("solve_S needs order >= 1");
    auto [N, D] = lagrangian_numer_denom(m);
    const R& like = m.nu;
    UniPoly<R> Np = N.derivative(), Dp = D.derivative();
    TruncatedSeries<R> S(1, like);
    S[1] = Ring<R>::one(like);
    int known = 2;  // coefficients z^0..z^{known-1} are final
    while (known < order + 1) {
        known = std::min(2 * known, order + 1);
        TruncatedSeries<R> s = S.resized(known - 1);
        TruncatedSeries<R> NS = compose(N, s), DS = compose(D, s);
        TruncatedSeries<R> F = s * NS - (DS * DS).times_z();
        TruncatedSeries<R> Fp = NS + s * compose(Np, s) - (DS * compose(Dp, s)).times_z() * Ring<R>::from_int(2, like);
        S = s - F * Fp.inverse();
    }
    return S.order() == order ? S : S.resized(order);
}

/// Pol_Z(S(z), ν, c, z) truncated at z^order.
template <class R>
TruncatedSeries<R> pol_Z_eval(const TruncatedSeries<R>& s, const ModelPoint<R>& m, int order) {
    if (s.order() < order) throw InvalidArgument("pol_Z_eval: series order too low");
    auto g = pol_Z_groups(m);
    TruncatedSeries<R> S = s.resized(order);
    TruncatedSeries<R> W(order, m.nu), P(order, m.nu);
    P[0] = Ring<R>::one(m.nu);
    for (int k = 0; k <= 7; ++k) {
        if (k > 0) P = P * S;
        for (int j = 0; j < int(g[std::size_t(k)].size()); ++j) {
            const R& a = g[std::size_t(k)][std::size_t(j)];
            if (Ring<R>::is_zero(a)) continue;
            for (int i = 0; i + j <= order; ++i) W[i + j] = W[i + j] + a * P[i];
        }
    }
    return W;
}

namespace detail {

template <class R>
bool negligible(const R& x, const TruncatedSeries<R>& scale_of) {
    if constexpr (Ring<R>::exact) {
        (void)scale_of;
        return Ring<R>::is_zero(x);
    } else {
        Real m(0L, x.precision());
        for (auto& v : scale_of.coeffs()) m = std::max(m, Real(abs(v)));
        return abs(x) <= m * epsilon_bits(x.precision() / 2, x.precision());
    }
}

} // namespace detail

/// 𝒵(ν,c,z) = Σ_{n≥1} Z_n z^n up to z^order (coefficient 0 is zero).
template <class R>
TruncatedSeries<R> solve_Z(const ModelPoint<R>& m, int order) {
    if (order < 1) throw InvalidArgument("solve_Z needs order >= 1");
    const R u = m.u();
    if (Ring<R>::is_zero(u))
        throw NumericModeAtNuOne("pointwise evaluation is undefined at nu = 1; use the symbolic coefficients");
    TruncatedSeries<R> S = solve_S(m, order + 2);
    TruncatedSeries<R> W = pol_Z_eval(S, m, order + 2);
    // Y·(1 + 3c²uS) = W
    const TruncatedSeries<R> kS = S * (m.lift(3) * m.c * m.c * u);
    TruncatedSeries<R> Y(order + 2, m.nu);
    for (int n = 0; n <= order + 2; ++n) {
        R acc = W[n];
        for (int j = 1; j <= n; ++j) acc = acc - kS[j] * Y[n - j];
        Y[n] = std::move(acc);
    }
    if (!detail::negligible(Y[0], Y) || !detail::negligible(Y[1], Y))
        throw NonZeroRemainder("Pol_Z/(1+3c^2(1-nu^2)S) is not divisible by z^2");
    TruncatedSeries<R> Z = Y.divided_by_z(2);
    const R nine_u = m.lift(9) * u;
    R cn = Ring<R>::one(m.nu);
    for (int n = 0; n <= order; ++n) {
        Z[n] = Ring<R>::exact_div(Ring<R>::exact_div(Z[n], nine_u), cn);
        cn = cn * m.c;
    }
    Z[0] = Ring<R>::zero(m.nu);
    return Z;
}

/// Runs `f(bits)` at p and 2p bits and checks agreement to p/2 bits per entry.
/// Returns the 2p values rounded to p bits.
inline std::vector<Real> audited(const std::function<std::vector<Real>(long)>& f, long p, const char* what) {
    std::vector<Real> lo = f(p), hi = f(2 * p);
    Real tol = epsilon_bits(p / 2, 2 * p);
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i].is_zero() && hi[i].is_zero()) continue;
        if (rel_diff(lo[i], hi[i]) > tol)
            throw PrecisionExhausted(std::string(what) + ": runs at " + std::to_string(p) + " and " +
                                     std::to_string(2 * p) + " bits disagree at index " + std::to_string(i));
    }
    for (auto& v : hi) v = v.with_precision(p);
    return hi;
}

/// Symbolic S_n ∈ ℤ[ν,c], n = 0..order.
inline TruncatedSeries<ParamPoly> solve_S_symbolic(int order) { return solve_S(symbolic_point(), order); }

/// Symbolic Z_n, n = 0..order (Z_0 = 0).
inline TruncatedSeries<ParamPoly> solve_Z_symbolic(int order) { return solve_Z(symbolic_point(), order); }

/// Numeric S_n at the point, with the two-precision audit.
inline std::vector<Real> solve_S_numeric(const IsingParams& params, int order) {
    params.validate();
    return audited(
        [&](long bits) { return solve_S(real_point(params, bits), order).coeffs(); },
        params.precision_bits, "solve_S");
}

/// Numeric Z_1..Z_{n_max} at the point, with the two-precision audit.
inline std::vector<Real> coefficient_sequence(const IsingParams& params, int n_max) {
    if (!params.numeric_mode()) throw InvalidArgument("coefficient_sequence needs numeric mode");
    params.validate();
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    return audited(
        [&](long bits) {
            auto z = solve_Z(real_point(params, bits), n_max).coeffs();
            return std::vector<Real>(z.begin() + 1, z.end());
        },
        params.precision_bits, "coefficient_sequence");
}

} // namespace isingmaps
