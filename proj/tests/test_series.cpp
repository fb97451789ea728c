#include <gtest/gtest.h>

#include <isingmaps/series.hpp>

#include "gen.hpp"

using namespace isingmaps;

namespace {

ParamPoly mono(long coef, int nu_exp, int c_exp) { return ParamPoly::monomial(coef, nu_exp, c_exp); }

// Rooted 4-valent planar maps with n vertices: 2·3ⁿ(2n)!/(n!(n+2)!).
Rational rooted_maps(int n) {
    Rational f2n = 1, fn = 1, fn2 = 1;
    for (int i = 2; i <= 2 * n; ++i) f2n *= i;
    for (int i = 2; i <= n; ++i) fn *= i;
    for (int i = 2; i <= n + 2; ++i) fn2 *= i;
    return 2 * pow(Rational(3), n) * f2n / (fn * fn2);
}

const TruncatedSeries<ParamPoly>& symbolic_Z() {
    static const TruncatedSeries<ParamPoly> z = solve_Z_symbolic(8);
    return z;
}

const TruncatedSeries<ParamPoly>& symbolic_S() {
    static const TruncatedSeries<ParamPoly> s = solve_S_symbolic(8);
    return s;
}

bool nonnegative_integer_coefficients(const ParamPoly& p) {
    for (auto& [m, q] : p.terms())
        if (q < 0 || denominator(q) != 1) return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------- Lagrangian

TEST(Lagrangian, CollapsesAtNuOneCOne) {
    auto [N, D] = lagrangian_numer_denom(ModelPoint<Rational>{1, 1});
    EXPECT_EQ(N, (UniPoly<Rational>{1, -6}));
    EXPECT_EQ(D, (UniPoly<Rational>{1}));
}

TEST(Lagrangian, SymbolicSupport) {
    auto [N, D] = lagrangian_numer_denom(symbolic_point());
    std::vector<int> n_deg, d_deg;
    for (int i = 0; i <= N.degree(); ++i)
        if (!N[i].is_zero()) n_deg.push_back(i);
    for (int i = 0; i <= D.degree(); ++i)
        if (!D[i].is_zero()) d_deg.push_back(i);
    EXPECT_EQ(n_deg, (std::vector<int>{0, 1, 2, 4, 6}));
    EXPECT_EQ(d_deg, (std::vector<int>{0, 2}));
}

TEST(Lagrangian, AtNuZero) {
    auto [N, D] = lagrangian_numer_denom(ModelPoint<ParamPoly>{ParamPoly(0), ParamPoly::c()});
    EXPECT_EQ(N, (UniPoly<ParamPoly>{ParamPoly(1), ParamPoly(0), mono(-21, 0, 2), ParamPoly(0), mono(135, 0, 4),
                                     ParamPoly(0), mono(-243, 0, 6)}));
    EXPECT_EQ(D, (UniPoly<ParamPoly>{ParamPoly(1), ParamPoly(0), mono(-9, 0, 2)}));
}

// ---------------------------------------------------------------- S

TEST(SolveS, LowOrderCoefficients) {
    const auto& S = symbolic_S();
    EXPECT_TRUE(S[0].is_zero());
    EXPECT_EQ(S[1], ParamPoly(1));
    EXPECT_EQ(S[2], mono(3, 2, 2) + mono(3, 2, 0));
}

TEST(SolveS, NonnegativeIntegerCoefficientsThroughOrderEight) {
    const auto& S = symbolic_S();
    for (int n = 1; n <= 8; ++n) EXPECT_TRUE(nonnegative_integer_coefficients(S[n])) << "n=" << n << ": " << S[n].str();
}

TEST(SolveS, FixedPointResidualVanishesSymbolically) {
    const auto& S = symbolic_S();
    auto [N, D] = lagrangian_numer_denom(symbolic_point());
    auto DS = compose(D, S);
    auto r = S * compose(N, S) - (DS * DS).times_z();
    for (int n = 0; n <= r.order(); ++n) EXPECT_TRUE(r[n].is_zero()) << "n=" << n;
}

TEST(SolveS, NumericResidualWithinPrecision) {
    const auto p = IsingParams::numeric(Rational(3, 2), Rational(9, 10), 128);
    auto m = real_point(p, 128);
    auto S = solve_S(m, 30);
    auto [N, D] = lagrangian_numer_denom(m);
    auto DS = compose(D, S);
    auto r = S * compose(N, S) - (DS * DS).times_z();
    Real scale(0L, 128);
    for (auto& v : S.coeffs()) scale = std::max(scale, abs(v));
    for (int n = 0; n <= r.order(); ++n) EXPECT_LE(abs(r[n]), scale * epsilon_bits(64, 128)) << "n=" << n;
}

TEST(SolveS, RejectsOrderZero) { EXPECT_THROW(solve_S(symbolic_point(), 0), InvalidArgument); }

// ---------------------------------------------------------------- Pol_Z

TEST(PolZ, DegreesSevenInSAndTwoInZ) {
    auto g = pol_Z_groups(symbolic_point());
    EXPECT_FALSE(g[7].empty());
    bool top = false;
    std::size_t zdeg = 0;
    for (auto& grp : g) {
        for (std::size_t j = 0; j < grp.size(); ++j)
            if (!grp[j].is_zero()) zdeg = std::max(zdeg, j);
    }
    for (auto& v : g[7]) top = top || !v.is_zero();
    EXPECT_TRUE(top);
    EXPECT_EQ(zdeg, 2u);
}

TEST(PolZ, ConstantTermIsThreeZSquaredU) {
    auto g = pol_Z_groups(symbolic_point());
    const ParamPoly u = ParamPoly(1) - ParamPoly::nu() * ParamPoly::nu();
    ASSERT_GE(g[0].size(), 3u);
    EXPECT_TRUE(g[0][0].is_zero());
    EXPECT_TRUE(g[0][1].is_zero());
    EXPECT_EQ(g[0][2], ParamPoly(3) * u);
    auto W = pol_Z_eval(solve_S(symbolic_point(), 4), symbolic_point(), 4);
    EXPECT_TRUE(W[0].is_zero());
}

TEST(PolZ, ScalingIdentityHolds) {
    // 𝒵(ν,c,cz)·9z²u(1 + 3c²uS) = Pol_Z(S, ν, c, z)
    const int N = 7;
    auto m = symbolic_point();
    auto S = solve_S(m, N);
    auto W = pol_Z_eval(S, m, N);
    const auto& Z = symbolic_Z();
    const ParamPoly u = m.u();
    TruncatedSeries<ParamPoly> Zc(N, m.nu);
    ParamPoly cn(1);
    for (int n = 1; n <= N; ++n) {
        cn *= m.c;
        Zc[n] = Z[n] * cn;
    }
    TruncatedSeries<ParamPoly> z2(N, m.nu);
    z2[2] = ParamPoly(9) * u;
    auto lhs = Zc * z2 * (S * (ParamPoly(3) * m.c * m.c * u) + TruncatedSeries<ParamPoly>({ParamPoly(1)}, N, m.nu));
    for (int n = 0; n <= N; ++n) EXPECT_EQ(lhs[n], W[n]) << "n=" << n;
}

// ---------------------------------------------------------------- Z

TEST(SolveZ, MatchesThePrintedExpansion) {
    const auto& Z = symbolic_Z();
    EXPECT_TRUE(Z[0].is_zero());
    EXPECT_EQ(Z[1], mono(2, 2, 1));
    EXPECT_EQ(Z[2], mono(9, 4, 2) + mono(8, 2, 0) + mono(1, 0, 0));
    EXPECT_EQ(Z[3], ParamPoly(18) * (mono(3, 6, 3) + mono(4, 4, 1) + mono(2, 2, 1) + mono(2, 4, -1) + mono(1, 2, -1)));
}

TEST(SolveZ, TopCoefficientCountsRootedMaps) {
    // all spins ⊕ and every edge monochromatic: ν^{2n}cⁿ weighs each rooted map once
    const auto& Z = symbolic_Z();
    for (int n = 1; n <= 8; ++n) {
        EXPECT_EQ(Z[n].coeff(2 * n, n), rooted_maps(n)) << "n=" << n;
        EXPECT_EQ(Z[n].deg_nu(), 2 * n);
        EXPECT_EQ(Z[n].max_deg_c(), n);
    }
    EXPECT_EQ(rooted_maps(1), 2);
    EXPECT_EQ(rooted_maps(2), 9);
    EXPECT_EQ(rooted_maps(3), 54);
    EXPECT_EQ(rooted_maps(4), 378);
}

TEST(SolveZ, AtNuOneIsFreeSpinSum) {
    // ν=1: Σ over maps of c·(c + 1/c)^{n−1}
    const auto& Z = symbolic_Z();
    const ParamPoly cc = ParamPoly::c(), ci = mono(1, 0, -1);
    for (int n = 1; n <= 8; ++n) {
        ParamPoly at_one;
        for (auto& [m, q] : Z[n].terms()) at_one += ParamPoly::monomial(q, 0, m.c);
        EXPECT_EQ(at_one, rooted_maps(n) * (cc * pow(cc + ci, n - 1))) << "n=" << n;
        EXPECT_EQ(Z[n].eval(Rational(1), Rational(1)), rooted_maps(n) * pow(Rational(2), n - 1));
    }
}

TEST(SolveZ, LaurentStructure) {
    const auto& Z = symbolic_Z();
    for (int n = 1; n <= 6; ++n) {
        EXPECT_GE(Z[n].min_deg_c(), -n);
        EXPECT_LE(Z[n].max_deg_c(), n);
        for (auto& [m, q] : Z[n].terms()) {
            EXPECT_GT(q, 0);
            EXPECT_EQ(((m.c - n) % 2 + 2) % 2, 0) << "n=" << n;
            EXPECT_EQ(m.nu % 2, 0);
        }
    }
}

TEST(SolveZ, NumericMatchesSymbolicAtRandomPoints) {
    gen::Gen g(31);
    const auto Z = solve_Z_symbolic(12);
    for (int k = 0; k < 5; ++k) {
        Rational nu, c;
        do nu = Rational(g.integer(1, 40), g.integer(1, 12));
        while (nu == 1);
        c = Rational(g.integer(8, 12), 10);
        auto seq = coefficient_sequence(IsingParams::numeric(nu, c, 128), 12);
        ASSERT_EQ(seq.size(), 12u);
        for (int n = 1; n <= 12; ++n) {
            Real exact(Z[n].eval(nu, c), 256);
            EXPECT_LE(rel_diff(seq[std::size_t(n - 1)], exact), epsilon_bits(64, 256))
                << "nu=" << to_string(nu) << " c=" << to_string(c) << " n=" << n;
        }
    }
}

TEST(SolveZ, ExactRingAgreesWithSymbolicEvaluation) {
    const auto Z = solve_Z(ModelPoint<Rational>{Rational(2, 3), Rational(5, 4)}, 8);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(Z[n], symbolic_Z()[n].eval(Rational(2, 3), Rational(5, 4)));
}

TEST(SolveZ, PointwiseRingsRejectNuOne) {
    EXPECT_THROW(solve_Z(ModelPoint<Rational>{1, 1}, 6), NumericModeAtNuOne);
}

// ---------------------------------------------------------------- numeric sequence

TEST(CoefficientSequence, SpecPoints) {
    auto a = coefficient_sequence(IsingParams::numeric(Rational(1, 2), 1), 3);
    EXPECT_EQ(a[0].to_double(), 0.5);
    auto b = coefficient_sequence(IsingParams::numeric(2, 1), 5);
    const double expect[] = {8, 177, 5400, 193590, 7664544};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(b[std::size_t(i)].to_double(), expect[i], 1e-6 * expect[i]);
}

TEST(CoefficientSequence, PositiveAtNuFour) {
    auto z = coefficient_sequence(IsingParams::numeric(4, 1), 50);
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_GT(z[i].sign(), 0) << "n=" << i + 1;
}

TEST(CoefficientSequence, NumericModeRejectsNuOne) {
    EXPECT_THROW(IsingParams::numeric(1, 1), NumericModeAtNuOne);
    EXPECT_THROW(solve_Z(ModelPoint<Real>{Real(1L), Real(1L)}, 3), NumericModeAtNuOne);
}

TEST(CoefficientSequence, NeedsNumericModeAndPositiveOrder) {
    EXPECT_THROW(coefficient_sequence(IsingParams::point(2, 1), 3), InvalidArgument);
    EXPECT_THROW(coefficient_sequence(IsingParams::numeric(2, 1), 0), InvalidArgument);
    EXPECT_THROW(IsingParams::numeric(-1, 1), InvalidArgument);
}

TEST(Audit, DisagreementRaisesPrecisionExhausted) {
    auto drifting = [](long bits) { return std::vector<Real>{Real(1L, bits) + epsilon_bits(bits / 4, bits)}; };
    EXPECT_THROW(audited(drifting, 64, "test"), PrecisionExhausted);
    auto stable = [](long bits) { return std::vector<Real>{Real(Rational(1, 3), bits)}; };
    auto v = audited(stable, 64, "test");
    EXPECT_EQ(v[0].precision(), 64);
}
