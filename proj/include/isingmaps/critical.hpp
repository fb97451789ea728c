#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "fd.hpp"
#include "singular.hpp"

namespace isingmaps {

/// Observables at finite n (n > 0) or in the thermodynamic limit (n = 0).
struct ObservableSet {
    Number F, M;
    std::optional<Number> chi;  // nullopt: +∞
    int n = 0;
};

// ---------------------------------------------------------------- free energy

namespace detail {

inline RadiusOptions rho_only(long prec) {
    RadiusOptions o;
    o.with_exponent = false;
    o.with_uniqueness = false;
    o.allow_outside_region = true;
    o.tol = Rational(1) / Rational(pow(Integer(2), unsigned(prec - 16)));
    return o;
}

/// ρ(ν, c) at an exact point, real-valued.
inline Real rho_at(const Rational& nu, const Rational& c, long prec) {
    IsingParams p = IsingParams::point(nu, c);
    p.precision_bits = prec;
    return radius_numeric(p, rho_only(prec)).rho.value;
}

} // namespace detail

/// F(ν, c) = −log μ.
inline Number free_energy(const IsingParams& params) {
    auto r = radius_numeric(params, detail::rho_only(params.precision_bits));
    return Number::of(-log(r.mu.value));
}

/// F_n = log(Z_n)/n for each n of a coefficient sequence Z_1, Z_2, …
inline std::vector<Real> finite_free_energy(const std::vector<Real>& Z) {
    std::vector<Real> F;
    for (std::size_t i = 0; i < Z.size(); ++i) {
        if (Z[i].sign() <= 0) throw NonPositiveSequence("Z_n must be positive");
        F.push_back(log(Z[i]) / long(i + 1));
    }
    return F;
}

// ---------------------------------------------------------------- finite n

/// M_n = θZ_n/(n Z_n), θ = c∂_c, exact.
inline Rational finite_magnetization(const ParamPoly& Zn, int n, const Rational& nu, const Rational& c) {
    const Rational z = Zn.eval(nu, c);
    if (z == 0) throw InvalidArgument("Z_n vanishes at this point");
    return Zn.theta_c().eval(nu, c) / (n * z);
}

/// χ_n = θ² log Z_n / n, exact.
inline Rational finite_susceptibility(const ParamPoly& Zn, int n, const Rational& nu, const Rational& c) {
    const Rational z = Zn.eval(nu, c);
    if (z == 0) throw InvalidArgument("Z_n vanishes at this point");
    const ParamPoly t = Zn.theta_c();
    const Rational t1 = t.eval(nu, c), t2 = t.theta_c().eval(nu, c);
    return (t2 * z - t1 * t1) / (n * z * z);
}

/// Finite-n observables. Symbolic mode differentiates Z_n exactly; numeric
/// mode uses central differences of log Z_n in c with step h.
inline ObservableSet finite_observables(int n, const IsingParams& params, const Rational& h = Rational(1, 1000)) {
    params.validate();
    if (n < 1) throw InvalidArgument("n must be positive");
    const long prec = params.precision_bits;
    ObservableSet o;
    o.n = n;
    if (!params.numeric_mode()) {
        const ParamPoly Zn = solve_Z_symbolic(n)[n];
        const Rational z = Zn.eval(params.nu, params.c);
        o.F = Number::of(log(Real(z, prec)) / long(n));
        o.M = Number::of(finite_magnetization(Zn, n, params.nu, params.c), prec);
        o.chi = Number::of(finite_susceptibility(Zn, n, params.nu, params.c), prec);
        return o;
    }
    auto logZ = [&](long j, long div) {
        const Rational c = params.c + Rational(j) * h / div;
        auto seq = coefficient_sequence(IsingParams::numeric(params.nu, c, prec), n);
        return log(seq.back());
    };
    const Real hc(h, prec), cc(params.c, prec);
    const Derivative d1 = fd_derivative(logZ, hc, 1, Stencil::Central);
    const Derivative d2 = fd_derivative(logZ, hc, 2, Stencil::Central);
    o.F = Number::of(logZ(0, 1) / long(n));
    o.M = Number::of(cc * d1.value / long(n));
    o.chi = Number::of((cc * d1.value + cc * cc * d2.value) / long(n));
    return o;
}

// ---------------------------------------------------------------- closed forms

/// Spontaneous magnetization M₀(ν) = 3ν√(ν²−16)/(3ν²−8) for ν ≥ 4, else 0.
inline Number m0_closed(const Rational& nu, mpfr_prec_t prec = Real::default_precision()) {
    if (nu <= 0) throw InvalidArgument("nu must be positive");
    if (nu < 4) return Number::of(Rational(0), prec);
    const Rational d = 3 * nu * nu - 8;
    if (auto r = exact_sqrt(nu * nu - 16)) return Number::of(3 * nu * *r / d, prec);
    return Number::of(Real(3 * nu / d, prec) * sqrt(Real(nu * nu - 16, prec)));
}

/// χ(ν, 1) = 3ν/((2√ν+1)(√ν−2)²) for ν < 4; nullopt (+∞) for ν ≥ 4.
inline std::optional<Number> chi_closed(const Rational& nu, mpfr_prec_t prec = Real::default_precision()) {
    if (nu <= 0) throw InvalidArgument("nu must be positive");
    if (nu >= 4) return std::nullopt;
    auto f = [&](const auto& r) {
        using K = std::decay_t<decltype(r)>;
        const K t = r - K(2);
        return K(3) * r * r / ((K(2) * r + K(1)) * t * t);
    };
    if (auto r = exact_sqrt(nu)) return Number::of(f(*r), prec);
    return Number::of(f(sqrt(Real(nu, prec))));
}

/// (3/5)·2^(3/5)·(c−1)^(1/5).
inline Real m_critical_asymptote(const Real& c) {
    const mpfr_prec_t prec = c.precision();
    if (c <= Real(1L, prec)) throw InvalidArgument("m_critical_asymptote needs c > 1");
    const Real fifth = Real(1L, prec) / 5;
    return Real(3L, prec) / 5 * pow(Real(2L, prec), fifth * 3) * pow(c - 1, fifth);
}

/// (6√2/5)·√(ν/4 − 1), the β-asymptote of M₀ at ν → 4⁺.
inline Real m0_asymptote(const Real& nu) {
    const mpfr_prec_t prec = nu.precision();
    return Real(6L, prec) * sqrt(Real(2L, prec)) / 5 * sqrt(nu / 4 - 1);
}

/// 12/(5(1−ν/4)²), the γ-asymptote of χ at ν → 4⁻.
inline Real chi_asymptote(const Real& nu) {
    const Real t = Real(1L, nu.precision()) - nu / 4;
    return Real(12L, nu.precision()) / (t * t * 5);
}

// ---------------------------------------------------------------- thermodynamic limit

struct ThermoEstimate {
    Real value;
    Real step_gap;
    Stencil stencil = Stencil::Central;
};

namespace detail {

/// Forward differences for ν ≥ 4 when the centred stencil would reach c = 1
/// (ρ has a branch point there); backward for the mirror case.
inline Stencil choose_stencil(const Rational& nu, const Rational& c, const Rational& h, int reach) {
    if (nu < 4) return Stencil::Central;
    if (c > 1 && c - reach * h <= 1) return Stencil::Forward;
    if (c < 1 && c + reach * h >= 1) return Stencil::Backward;
    if (c == 1) return Stencil::Forward;
    return Stencil::Central;
}

inline void check_gap(const Derivative& d, const Real& tol, const char* what) {
    if (d.step_gap > tol * 10)
        throw StepTooLarge(std::string(what) + ": steps h and h/2 disagree by " + d.step_gap.str(6));
}

} // namespace detail

/// M(ν, c) = −(1 + c∂_cρ/ρ) by finite differences of ρ in c.
inline ThermoEstimate thermo_magnetization(const Rational& nu, const Rational& c, const Rational& h_step,
                                           const Real& tol, long prec = 192) {
    if (h_step <= 0) throw InvalidArgument("h_step must be positive");
    const Stencil s = detail::choose_stencil(nu, c, h_step, 2);
    auto lr = [&](long j, long div) { return log(detail::rho_at(nu, c + Rational(j) * h_step / div, prec)); };
    const Derivative d = fd_derivative(lr, Real(h_step, prec), 1, s);
    detail::check_gap(d, tol, "thermo_magnetization");
    return {-(Real(1L, prec) + Real(c, prec) * d.value), d.step_gap, s};
}

/// χ(ν, c) = (cρ′/ρ)² − cρ′/ρ − c²ρ″/ρ by finite differences of ρ in c.
inline ThermoEstimate thermo_susceptibility(const Rational& nu, const Rational& c, const Rational& h_step,
                                            const Real& tol, long prec = 192) {
    if (h_step <= 0) throw InvalidArgument("h_step must be positive");
    const Stencil s = detail::choose_stencil(nu, c, h_step, 4);
    std::map<std::pair<long, long>, Real> cache;
    auto r = [&](long j, long div) {
        const Rational x = c + Rational(j) * h_step / div;
        auto key = std::make_pair(numerator(x).convert_to<long>(), denominator(x).convert_to<long>());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        return cache[key] = detail::rho_at(nu, x, prec);
    };
    const Real hh(h_step, prec), cc(c, prec);
    const Derivative d1 = fd_derivative(r, hh, 1, s);
    const Derivative d2 = fd_derivative(r, hh, 2, s);
    const Real rho = r(0, 1);
    const Real a = cc * d1.value / rho, b = cc * cc * d2.value / rho;
    const Real chi = a * a - a - b;
    const Real gap = (cc * d1.step_gap / rho) * (abs(a) * 2 + 1) + cc * cc * d2.step_gap / rho;
    if (gap > tol * 10) throw StepTooLarge("thermo_susceptibility: steps h and h/2 disagree by " + gap.str(6));
    return {chi, gap, s};
}

// ---------------------------------------------------------------- coefficient asymptotics

struct FitResult {
    Real mu_estimate;     // ratio-method limit of Z_n/Z_{n+1}
    Real alpha_exponent;  // least-squares α in Z_n μⁿ ~ ℷ n^(−α)
    Real amplitude;       // ℷ
    Real residual;        // RMS of the least-squares fit
    Real alpha_local;     // α_n at n_max
    Real alpha_aitken;    // Aitken-accelerated α_n at n_max
    int n_min = 0, n_max = 0;
};

/// Ratio-method limit of Z_n/Z_{n+1}: Neville extrapolation in 1/n over `points`
/// values of n evenly spaced in [n_lo, n_hi]. `Z[i]` holds Z_{i+1}.
inline Real ratio_limit(const std::vector<Real>& Z, int n_lo, int n_hi, int points = 5) {
    if (n_lo < 1 || n_hi + 1 > int(Z.size()) || n_lo >= n_hi || points < 2)
        throw InvalidArgument("ratio_limit: bad range");
    std::vector<Real> x, y;
    for (int k = 0; k < points; ++k) {
        const int n = n_lo + (n_hi - n_lo) * k / (points - 1);
        const Real& zn = Z[std::size_t(n - 1)];
        if (zn.sign() <= 0 || Z[std::size_t(n)].sign() <= 0) throw NonPositiveSequence("Z_n must be positive");
        x.push_back(Real(1L, zn.precision()) / long(n));
        y.push_back(zn / Z[std::size_t(n)]);
    }
    return extrapolate_to_zero(x, y);
}

/// Fits log(Z_n μⁿ) = log ℷ − α log n on n ∈ [n_min, n_max]. `Z[i]` holds Z_{i+1}.
inline FitResult exponent_fit(const std::vector<Real>& Z, const Real& mu, int n_min, int n_max) {
    if (n_min < 2 || n_max <= n_min + 2 || n_max > int(Z.size())) throw InvalidArgument("exponent_fit: bad n range");
    const mpfr_prec_t prec = mu.precision();
    const Real lmu = log(mu);
    auto y = [&](int n) {
        const Real& z = Z[std::size_t(n - 1)];
        if (z.sign() <= 0) throw NonPositiveSequence("Z_" + std::to_string(n) + " is not positive");
        return log(z) + lmu * long(n);
    };
    auto lg = [&](int n) { return log(Real(long(n), prec)); };
    Real sx(0L, prec), sy(0L, prec), sxx(0L, prec), sxy(0L, prec);
    const long m = n_max - n_min + 1;
    std::vector<Real> xs, ys;
    for (int n = n_min; n <= n_max; ++n) {
        xs.push_back(lg(n));
        ys.push_back(y(n));
        sx += xs.back();
        sy += ys.back();
        sxx += xs.back() * xs.back();
        sxy += xs.back() * ys.back();
    }
    const Real slope = (sxy * m - sx * sy) / (sxx * m - sx * sx);
    const Real icpt = (sy - slope * sx) / m;
    Real ss(0L, prec);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Real e = ys[i] - icpt - slope * xs[i];
        ss += e * e;
    }
    auto local = [&](int n) { return -(y(n) - y(n - 1)) / (lg(n) - lg(n - 1)); };
    const Real a0 = local(n_max - 2), a1 = local(n_max - 1), a2 = local(n_max);
    const Real den = a2 - a1 * 2 + a0;
    const Real aitken = den.is_zero() ? a2 : a2 - (a2 - a1) * (a2 - a1) / den;
    FitResult r;
    r.mu_estimate = ratio_limit(Z, std::max(n_min, n_max / 2), n_max - 1);
    r.alpha_exponent = -slope;
    r.amplitude = exp(icpt);
    r.residual = sqrt(ss / m);
    r.alpha_local = a2;
    r.alpha_aitken = aitken;
    r.n_min = n_min;
    r.n_max = n_max;
    return r;
}

// ---------------------------------------------------------------- third-order transition

struct TransitionCheck {
    std::array<Real, 3> left, right;  // one-sided d^k/dν^k of −log ρ_ν at ν = 4, k = 1..3
    std::array<Real, 3> jump;         // |left − right|
};

/// One-sided derivatives of F(ν, 1) = −log ρ_ν at ν = 4 from radius_numeric,
/// on 7-point stencils of step h on either side.
inline TransitionCheck third_order_check(const Rational& h = Rational(1, 1000), long prec = 192) {
    const Rational four(4);
    auto F = [&](long j) { return -log(detail::rho_at(four + Rational(j) * h, Rational(1), prec)); };
    std::vector<Real> left_x, right_x, left_f, right_f;
    const Real F0 = F(0);
    for (long j = 0; j <= 6; ++j) {
        left_x.push_back(Real(-j, prec));
        right_x.push_back(Real(j, prec));
        left_f.push_back(j == 0 ? F0 : F(-j));
        right_f.push_back(j == 0 ? F0 : F(j));
    }
    auto wl = fornberg_weights(Real(0L, prec), left_x, 3), wr = fornberg_weights(Real(0L, prec), right_x, 3);
    TransitionCheck t;
    const Real hh(h, prec);
    for (int k = 1; k <= 3; ++k) {
        Real l(0L, prec), r(0L, prec);
        for (std::size_t i = 0; i < left_x.size(); ++i) {
            l += wl[std::size_t(k)][i] * left_f[i];
            r += wr[std::size_t(k)][i] * right_f[i];
        }
        t.left[std::size_t(k - 1)] = l / pow(hh, long(k));
        t.right[std::size_t(k - 1)] = r / pow(hh, long(k));
        t.jump[std::size_t(k - 1)] = abs(t.left[std::size_t(k - 1)] - t.right[std::size_t(k - 1)]);
    }
    return t;
}

} // namespace isingmaps
