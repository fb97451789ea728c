#pragma once

#include <vector>

#include "complex.hpp"
#include "unipoly.hpp"

namespace isingmaps {

struct ComplexRoot {
    Complex value;
    int multiplicity = 1;
};

namespace detail {

inline Complex horner(const std::vector<Complex>& a, const Complex& x) {
    Complex r = a.back();
    for (std::size_t i = a.size() - 1; i-- > 0;) r = r * x + a[i];
    return r;
}

inline std::vector<Complex> derive(const std::vector<Complex>& a) {
    std::vector<Complex> d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Complex(long(i), a[i].precision()));
    return d;
}

} // namespace detail

/// All complex roots of a_0 + a_1 x + … (Aberth–Ehrlich), with multiplicities
/// found by clustering and each cluster polished by Newton on p^(m−1).
inline std::vector<ComplexRoot> polynomial_roots(std::vector<Complex> a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    if (a.size() < 2) return {};
    const mpfr_prec_t prec = a.back().precision();
    std::vector<ComplexRoot> out;
    int zeros = 0;
    while (a.front().is_zero()) {
        a.erase(a.begin());
        ++zeros;
    }
    if (zeros) out.push_back({Complex(0L, prec), zeros});
    const int n = int(a.size()) - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({-a[0] / a[1], 1});
        return out;
    }
    std::vector<Complex> d = detail::derive(a);
    // Fujiwara-type radius for the starting circle
    Real rad(0L, prec);
    Real an = abs(a.back());
    for (int i = 0; i < n; ++i) {
        Real t = pow(abs(a[std::size_t(i)]) / an, Real(1L, prec) / Real(long(n - i), prec));
        if (t > rad) rad = t;
    }
    rad = rad * 2 + Real::from_double(1e-3, prec);
    std::vector<Complex> z;
    Real two_pi = Real::pi(prec) * 2;
    for (int k = 0; k < n; ++k)
        z.push_back(Complex::polar(rad, two_pi * Real(long(k), prec) / Real(long(n), prec) + Real::from_double(0.4, prec)));
    const Real eps = epsilon_bits(prec - 8, prec);
    for (int it = 0; it < 4000; ++it) {
        Real worst(0L, prec);
        for (int k = 0; k < n; ++k) {
            Complex pk = detail::horner(a, z[std::size_t(k)]);
            if (pk.is_zero()) continue;
            Complex ratio = pk / detail::horner(d, z[std::size_t(k)]);
            Complex sum(0L, prec);
            for (int j = 0; j < n; ++j)
                if (j != k) sum += Complex(1L, prec) / (z[std::size_t(k)] - z[std::size_t(j)]);
            Complex w = ratio / (Complex(1L, prec) - ratio * sum);
            z[std::size_t(k)] -= w;
            Real rel = abs(w) / std::max(Real(1L, prec), abs(z[std::size_t(k)]));
            if (rel > worst) worst = rel;
        }
        if (worst < eps) break;
    }
    // cluster: multiple roots converge only to about prec/m bits
    Real scale(1L, prec);
    for (auto& r : z) scale = std::max(scale, abs(r));
    const Real ctol = scale * epsilon_bits(prec / 6, prec);
    std::vector<char> used(std::size_t(n), 0);
    for (int k = 0; k < n; ++k) {
        if (used[std::size_t(k)]) continue;
        std::vector<int> members{k};
        used[std::size_t(k)] = 1;
        for (int j = k + 1; j < n; ++j)
            if (!used[std::size_t(j)] && abs(z[std::size_t(j)] - z[std::size_t(k)]) < ctol) {
                members.push_back(j);
                used[std::size_t(j)] = 1;
            }
        Complex mean(0L, prec);
        for (int j : members) mean += z[std::size_t(j)];
        mean = mean / Complex(long(members.size()), prec);
        const int m = int(members.size());
        std::vector<Complex> f = a;
        for (int i = 1; i < m; ++i) f = detail::derive(f);
        std::vector<Complex> fd = detail::derive(f);
        for (int it = 0; it < 60; ++it) {
            Complex den = detail::horner(fd, mean);
            if (den.is_zero()) break;
            Complex step = detail::horner(f, mean) / den;
            mean -= step;
            if (abs(step) <= abs(mean) * eps) break;
        }
        out.push_back({mean, m});
    }
    return out;
}

template <class K>
std::vector<ComplexRoot> polynomial_roots(const UniPoly<K>& p, mpfr_prec_t prec) {
    std::vector<Complex> a;
    for (auto& v : p.coeffs()) {
        if constexpr (std::is_same_v<K, Complex>) a.push_back(v);
        else if constexpr (std::is_same_v<K, Real>) a.push_back(Complex(v.with_precision(prec)));
        else a.push_back(Complex(v, prec));
    }
    return polynomial_roots(std::move(a));
}

} // namespace isingmaps
