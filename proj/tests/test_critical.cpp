#include <gtest/gtest.h>

#include <cmath>

#include <isingmaps/critical.hpp>

#include "gen.hpp"

using namespace isingmaps;

namespace {

IsingParams at(Rational nu, Rational c) { return IsingParams::point(std::move(nu), std::move(c)); }

const std::vector<Real>& sequence(const Rational& nu, const Rational& c) {
    static std::map<std::pair<std::string, std::string>, std::vector<Real>> cache;
    auto key = std::make_pair(to_string(nu), to_string(c));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, coefficient_sequence(IsingParams::numeric(nu, c, 192), 401)).first;
    return it->second;
}

Real mu_of(const Rational& nu, const Rational& c) {
    RadiusOptions opt;
    opt.with_exponent = false;
    opt.with_uniqueness = false;
    return radius_numeric(at(nu, c), opt).mu.value;
}

double d(const Real& x) { return x.to_double(); }

const Real tol_loose = Real::from_double(1e-3, 192);
const Real tol_tight = Real::from_double(1e-6, 192);

} // namespace

// ---------------------------------------------------------------- free energy

TEST(FreeEnergy, CriticalPoint) {
    EXPECT_NEAR(d(free_energy(at(4, 1)).value), std::log(405.0 / 2), 1e-14);
}

TEST(FreeEnergy, LowTemperaturePoint) {
    EXPECT_NEAR(d(free_energy(at(5, 1)).value), std::log(20736.0 / 67), 1e-13);
}

TEST(FreeEnergy, IncreasingInNu) {
    double last = -1e300;
    for (Rational nu : {Rational(1, 4), Rational(2), Rational(4), Rational(5)}) {
        const double f = d(free_energy(at(nu, 1)).value);
        EXPECT_GT(f, last) << to_string(nu);
        last = f;
    }
}

TEST(FreeEnergy, FiniteVolumeGapShrinks) {
    const auto& Z = sequence(2, 1);
    const auto F = finite_free_energy(Z);
    double last = 1e300;
    for (int n : {25, 50, 100, 200}) {
        const double gap = std::abs(d(F[std::size_t(2 * n - 1)] - F[std::size_t(n - 1)]));
        EXPECT_LT(gap, last) << "n=" << n;
        last = gap;
    }
}

TEST(FreeEnergy, ConvergesAtLogNOverNRate) {
    for (auto [nu, c] : {std::pair<Rational, Rational>{2, 1}, {4, 1}}) {
        const auto& Z = sequence(nu, c);
        const auto F = finite_free_energy(Z);
        const Real lmu = log(mu_of(nu, c));
        // C from n in [50, 100], then the bound must hold on (100, 400]
        double C = 0;
        auto scaled = [&](int n) { return d(abs(F[std::size_t(n - 1)] + lmu)) * n / std::log(double(n)); };
        for (int n = 50; n <= 100; ++n) C = std::max(C, scaled(n));
        RecordProperty("C_nu_" + to_string(nu), std::to_string(C));
        for (int n = 101; n <= 400; ++n) EXPECT_LE(scaled(n), C) << "nu=" << to_string(nu) << " n=" << n;
    }
}

// ---------------------------------------------------------------- finite n

TEST(FiniteObservables, OneVertex) {
    const auto o = finite_observables(1, at(Rational(3, 2), Rational(7, 5)));
    EXPECT_EQ(o.M.exact, Rational(1));
    EXPECT_EQ(o.chi->exact, Rational(0));
}

TEST(FiniteObservables, TwoVerticesAtInfiniteTemperature) {
    const auto o = finite_observables(2, at(1, 1));
    EXPECT_EQ(o.M.exact, Rational(1, 2));
    EXPECT_EQ(o.chi->exact, Rational(1, 2));
}

TEST(FiniteObservables, NumericDifferencesMatchExact) {
    const auto exact = finite_observables(2, at(2, 1));
    EXPECT_EQ(exact.M.exact, Rational(48, 59));
    const auto num = finite_observables(2, IsingParams::numeric(2, 1));
    EXPECT_NEAR(d(num.M.value), 48.0 / 59, 1e-9);
    EXPECT_NEAR(d(num.chi->value), d(exact.chi->value), 1e-8);
    EXPECT_NEAR(d(num.F.value), std::log(177.0) / 2, 1e-12);
}

TEST(FiniteObservables, MagnetizationBoundedAndMonotoneInC) {
    const auto Z = solve_Z_symbolic(4);
    gen::Gen g(67);
    for (int k = 0; k < 10; ++k) {
        const Rational nu = Rational(g.integer(1, 24), 4);
        for (int n = 1; n <= 4; ++n) {
            Rational last = -2;
            for (int j = 1; j <= 40; ++j) {
                const Rational c(j, 10);
                const Rational m = finite_magnetization(Z[n], n, nu, c);
                EXPECT_LE(abs(m), 1);
                EXPECT_GE(m, last) << "n=" << n << " nu=" << to_string(nu) << " c=" << to_string(c);
                EXPECT_GE(finite_susceptibility(Z[n], n, nu, c), 0);
                last = m;
            }
        }
    }
}

// ---------------------------------------------------------------- closed forms

TEST(ClosedForms, SpontaneousMagnetization) {
    EXPECT_EQ(m0_closed(4).exact, Rational(0));
    EXPECT_EQ(m0_closed(5).exact, Rational(45, 67));
    EXPECT_EQ(m0_closed(2).exact, Rational(0));
    EXPECT_FALSE(m0_closed(6).is_exact());
}

TEST(ClosedForms, SpontaneousMagnetizationAsymptote) {
    for (long inv : {10000L, 1000000L}) {
        const Rational nu = 4 * (1 + Rational(1, inv));
        const Real ratio = m0_closed(nu, 192).value / m0_asymptote(Real(nu, 192));
        EXPECT_NEAR(d(ratio), 1.0, 1e-2) << inv;
    }
}

TEST(ClosedForms, Susceptibility) {
    EXPECT_EQ(chi_closed(1)->exact, Rational(1));
    EXPECT_FALSE(chi_closed(4).has_value());
    EXPECT_FALSE(chi_closed(5).has_value());
}

TEST(ClosedForms, SusceptibilityAsymptote) {
    for (long inv : {1000L, 10000L}) {
        const Rational nu = 4 * (1 - Rational(1, inv));
        const Real ratio = chi_closed(nu, 192)->value / chi_asymptote(Real(nu, 192));
        EXPECT_NEAR(d(ratio), 1.0, 1e-2) << inv;
    }
}

TEST(ClosedForms, CriticalIsotherm) {
    const Real c = Real(1L, 192) + Real(Rational(1, 32), 192);
    const Real expect = Real(Rational(3, 10), 192) * pow(Real(2L, 192), Real(Rational(3, 5), 192));
    EXPECT_LT(d(rel_diff(m_critical_asymptote(c), expect)), 1e-40);
    EXPECT_LT(d(m_critical_asymptote(Real(1L, 192) + Real(Rational(1, 10000000000LL), 192))), 1e-2);
    EXPECT_THROW(m_critical_asymptote(Real(1L, 192)), InvalidArgument);
}

// ---------------------------------------------------------------- thermodynamic limit

TEST(Thermo, NoSpontaneousMagnetizationAtHighTemperature) {
    const auto m = thermo_magnetization(2, 1, Rational(1, 1000), tol_tight);
    EXPECT_EQ(m.stencil, Stencil::Central);
    EXPECT_LT(std::abs(d(m.value)), 1e-6);
}

TEST(Thermo, LowTemperatureMagnetizationNearField) {
    const Rational h(1, 10000);
    const auto m = thermo_magnetization(5, 1 + h, h / 8, tol_loose);
    EXPECT_NEAR(d(m.value), 45.0 / 67, 1e-2);
}

TEST(Thermo, LowTemperatureMagnetizationTrend) {
    std::vector<double> v;
    for (long inv : {100L, 1000L, 10000L}) {
        const Rational h(1, inv);
        v.push_back(d(thermo_magnetization(5, 1 + h, h / 8, tol_loose).value));
    }
    const double target = 45.0 / 67;
    EXPECT_LT(std::abs(v[1] - target), std::abs(v[0] - target));
    EXPECT_LT(std::abs(v[2] - target), std::abs(v[1] - target));
    EXPECT_LT(std::abs(v[2] - target), 1e-2);
}

TEST(Thermo, HighTemperatureMagnetizationVanishesWithField) {
    double last = 1e300;
    for (long inv : {100L, 1000L, 10000L}) {
        const Rational h(1, inv);
        const double m = std::abs(d(thermo_magnetization(2, 1 + h, h / 8, tol_loose).value));
        EXPECT_LT(m, last);
        last = m;
    }
    EXPECT_LT(last, 1e-2);
}

TEST(Thermo, SusceptibilityAtInfiniteTemperature) {
    const auto chi = thermo_susceptibility(1, 1, Rational(1, 10000), tol_loose);
    EXPECT_NEAR(d(chi.value), 1.0, 1e-3);
}

TEST(Thermo, SusceptibilityMatchesClosedForm) {
    for (Rational nu : {Rational(1), Rational(2), Rational(3)}) {
        const auto chi = thermo_susceptibility(nu, 1, Rational(1, 10000), tol_loose);
        const Real closed = chi_closed(nu, 192)->value;
        EXPECT_LT(d(rel_diff(chi.value, closed)), 1e-3) << to_string(nu);
        EXPECT_GE(d(chi.value), -1e-9);
    }
}

TEST(Thermo, OneSidedStencilWhenReachingTheBranchPoint) {
    EXPECT_EQ(thermo_magnetization(5, 1, Rational(1, 1000), tol_loose).stencil, Stencil::Forward);
    EXPECT_EQ(thermo_magnetization(5, 1 + Rational(1, 1000), Rational(1, 1000), tol_loose).stencil, Stencil::Forward);
    EXPECT_EQ(thermo_magnetization(2, 1, Rational(1, 1000), tol_loose).stencil, Stencil::Central);
}

TEST(Thermo, StepTooLargeIsReported) {
    EXPECT_THROW(thermo_magnetization(5, 1 + Rational(1, 10000), Rational(1, 80000), tol_tight), StepTooLarge);
    EXPECT_THROW(thermo_magnetization(2, 1, 0, tol_tight), InvalidArgument);
}

TEST(Thermo, CriticalIsothermRatio) {
    for (long inv : {1000L, 10000L}) {
        const Rational h(1, inv);
        const auto m = thermo_magnetization(4, 1 + h, h / 8, tol_loose);
        const Real ratio = m.value / m_critical_asymptote(Real(1 + h, 192));
        EXPECT_NEAR(d(ratio), 1.0, 5e-2) << "c - 1 = 1/" << inv;
    }
}

// ---------------------------------------------------------------- third-order transition

TEST(ThirdOrder, LowerDerivativesContinuousThirdJumps) {
    const auto t = third_order_check();
    EXPECT_LT(d(t.jump[0]), 1e-3);
    EXPECT_LT(d(t.jump[1]), 1e-3);
    EXPECT_GT(d(t.jump[2]), 1e-2);
}

// ---------------------------------------------------------------- coefficient asymptotics

TEST(ExponentFit, SyntheticPowerLaw) {
    std::vector<Real> Z;
    for (int n = 1; n <= 200; ++n) Z.push_back(pow(Real(2L, 192), long(n)) / pow(Real(long(n), 192), 3L));
    const auto r = exponent_fit(Z, Real(Rational(1, 2), 192), 100, 200);
    EXPECT_NEAR(d(r.alpha_exponent), 3.0, 1e-3);
    EXPECT_NEAR(d(r.alpha_aitken), 3.0, 1e-3);
    EXPECT_NEAR(d(r.amplitude), 1.0, 1e-10);
    EXPECT_LT(d(r.residual), 1e-20);
}

TEST(ExponentFit, RejectsNonPositive) {
    std::vector<Real> Z(20, Real(1L, 192));
    Z[12] = Real(-1L, 192);
    EXPECT_THROW(exponent_fit(Z, Real(1L, 192), 2, 19), NonPositiveSequence);
    EXPECT_THROW(exponent_fit(Z, Real(1L, 192), 1, 19), InvalidArgument);
}

TEST(ExponentFit, CriticalPoint) {
    const auto r = exponent_fit(sequence(4, 1), mu_of(4, 1), 200, 400);
    EXPECT_NEAR(d(r.alpha_exponent), 7.0 / 3, 0.05);
    EXPECT_NEAR(d(r.alpha_aitken), d(r.alpha_exponent), 0.05);
}

TEST(ExponentFit, HighTemperature) {
    const auto r = exponent_fit(sequence(2, 1), mu_of(2, 1), 200, 400);
    EXPECT_NEAR(d(r.alpha_exponent), 2.5, 0.05);
    EXPECT_NEAR(d(r.alpha_aitken), d(r.alpha_exponent), 0.05);
}

TEST(ExponentFit, NonzeroField) {
    const Rational c(21, 20);
    const auto r = exponent_fit(sequence(4, c), mu_of(4, c), 200, 400);
    EXPECT_NEAR(d(r.alpha_exponent), 2.5, 0.05);
    EXPECT_NEAR(d(r.alpha_aitken), d(r.alpha_exponent), 0.05);
}

TEST(RatioLimit, ConvergesToMu) {
    const Real mu = mu_of(2, 1);
    EXPECT_LT(d(abs(ratio_limit(sequence(2, 1), 200, 400) - mu)), 1e-6);
}

// ---------------------------------------------------------------- finite differences

TEST(FiniteDifferences, FornbergIsExactOnPolynomials) {
    gen::Gen g(71);
    for (int k = 0; k < 20; ++k) {
        std::vector<Real> xs;
        const int npts = int(g.integer(3, 7));
        for (int i = 0; i < npts; ++i) xs.push_back(Real(Rational(i * 3 + int(g.integer(0, 2)), 2), 192));
        const Real x0(g.rational(4, 3), 192);
        std::vector<Rational> coef;
        for (int i = 0; i < npts; ++i) coef.push_back(g.rational());
        const UniPoly<Rational> p{std::vector<Rational>(coef)};
        auto w = fornberg_weights(x0, xs, 2);
        for (int m = 0; m <= 2 && m < npts; ++m) {
            Real acc(0L, 192);
            for (std::size_t i = 0; i < xs.size(); ++i) acc += w[std::size_t(m)][i] * p.eval(xs[i]);
            UniPoly<Rational> dp = p;
            for (int j = 0; j < m; ++j) dp = dp.derivative();
            const Real expect = dp.is_zero() ? Real(0L, 192) : dp.eval(x0);
            EXPECT_LT(d(abs(acc - expect)), 1e-30);
        }
    }
}

TEST(FiniteDifferences, NevilleIsExactOnPolynomials) {
    std::vector<Real> x, y;
    for (int i = 1; i <= 4; ++i) {
        const Real t(Rational(1, i), 192);
        x.push_back(t);
        y.push_back(Real(7L, 192) - t * 3 + t * t * t);
    }
    EXPECT_LT(d(abs(extrapolate_to_zero(x, y) - Real(7L, 192))), 1e-40);
}

TEST(FiniteDifferences, RichardsonRemovesLeadingError) {
    // d/dx e^x at 0 on exact samples
    auto f = [](long j, long div) { return exp(Real(Rational(j, div * 100), 192)); };
    const Real h(Rational(1, 100), 192);
    const auto c = fd_derivative(f, h, 1, Stencil::Central);
    EXPECT_LT(std::abs(d(c.value) - 1.0), 1e-8);
    const auto fw = fd_derivative(f, h, 1, Stencil::Forward);
    EXPECT_LT(std::abs(d(fw.value) - 1.0), 1e-8);
    EXPECT_EQ(stencil_offsets(Stencil::Backward, 2), (std::vector<long>{0, -1, -2, -3, -4}));
}
