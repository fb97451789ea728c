#pragma once

#include <functional>
#include <vector>

#include "real.hpp"

namespace isingmaps {

/// Finite-difference weights for the derivatives 0..m at x0 on arbitrary nodes (Fornberg).
/// Result[k][j] multiplies f(nodes[j]) in the k-th derivative.
inline std::vector<std::vector<Real>> fornberg_weights(const Real& x0, const std::vector<Real>& x, int m) {
    const int n = int(x.size()) - 1;
    const mpfr_prec_t prec = x0.precision();
    std::vector<std::vector<Real>> c(std::size_t(m) + 1, std::vector<Real>(x.size(), Real(0L, prec)));
    c[0][0] = Real(1L, prec);
    Real c1(1L, prec), c4 = x[0] - x0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        Real c2(1L, prec);
        const Real c5 = c4;
        c4 = x[std::size_t(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const Real c3 = x[std::size_t(i)] - x[std::size_t(j)];
            c2 = c2 * c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[std::size_t(k)][std::size_t(i)] =
                        c1 * (Real(long(k), prec) * c[std::size_t(k - 1)][std::size_t(i - 1)] - c5 * c[std::size_t(k)][std::size_t(i - 1)]) / c2;
                c[0][std::size_t(i)] = -c1 * c5 * c[0][std::size_t(i - 1)] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[std::size_t(k)][std::size_t(j)] =
                    (c4 * c[std::size_t(k)][std::size_t(j)] - Real(long(k), prec) * c[std::size_t(k - 1)][std::size_t(j)]) / c3;
            c[0][std::size_t(j)] = c4 * c[0][std::size_t(j)] / c3;
        }
        c1 = c2;
    }
    return c;
}

enum class Stencil { Central, Forward, Backward };

struct Derivative {
    Real value;
    Real step_gap;  // |D(h) − D(h/2)| before extrapolation
    int order = 0;  // formal accuracy order of one stencil
};

/// Stencil offsets (in units of the step) for derivative `m`.
inline std::vector<long> stencil_offsets(Stencil s, int m) {
    std::vector<long> o;
    if (s == Stencil::Central) {
        const long r = (m + 1) / 2;
        for (long j = -r; j <= r; ++j) o.push_back(j);
    } else {
        for (long j = 0; j <= m + 2; ++j) o.push_back(s == Stencil::Forward ? j : -j);
    }
    return o;
}

/// Formal accuracy order of stencil_offsets(s, m).
inline int stencil_order(Stencil s, int /*m*/) {
    if (s == Stencil::Central) return 2;
    return 3;
}

/// m-th derivative of f at x0 from steps h and h/2, combined by one Richardson step.
/// `f` receives the exact offset index j and the step divisor (1 or 2).
inline Derivative fd_derivative(const std::function<Real(long j, long div)>& f, const Real& h, int m, Stencil s) {
    const mpfr_prec_t prec = h.precision();
    auto offsets = stencil_offsets(s, m);
    auto one = [&](long div) {
        std::vector<Real> xs;
        for (long j : offsets) xs.push_back(Real(j, prec));
        auto w = fornberg_weights(Real(0L, prec), xs, m);
        Real acc(0L, prec);
        for (std::size_t i = 0; i < offsets.size(); ++i) acc += w[std::size_t(m)][i] * f(offsets[i], div);
        Real step = h / div;
        return acc / pow(step, long(m));
    };
    const Real d1 = one(1), d2 = one(2);
    const int p = stencil_order(s, m);
    const Real f2p = ldexp(Real(1L, prec), p);
    return {(f2p * d2 - d1) / (f2p - Real(1L, prec)), abs(d1 - d2), p};
}

/// Neville extrapolation of points (x_i, y_i) to x = 0.
inline Real extrapolate_to_zero(const std::vector<Real>& x, std::vector<Real> y) {
    const std::size_t n = x.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            y[i] = (x[i + k] * y[i] - x[i] * y[i + 1]) / (x[i + k] - x[i]);
    return y[0];
}

} // namespace isingmaps
