#pragma once

#include <random>
#include <vector>

#include <isingmaps/param_poly.hpp>
#include <isingmaps/unipoly.hpp>

namespace gen {

using isingmaps::ParamPoly;
using isingmaps::Rational;
using isingmaps::UniPoly;

/// Seeded source for the property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(long num = 9, long den = 6) {
        long d = integer(1, den);
        return Rational(integer(-num, num), d);
    }

    Rational nonzero_rational(long num = 9, long den = 6) {
        for (;;) {
            Rational q = rational(num, den);
            if (q != 0) return q;
        }
    }

    UniPoly<Rational> poly(int max_deg, long num = 9, long den = 4) {
        int d = int(integer(0, max_deg));
        std::vector<Rational> c;
        for (int i = 0; i < d; ++i) c.push_back(rational(num, den));
        c.push_back(nonzero_rational(num, den));
        return UniPoly<Rational>(std::move(c));
    }

    UniPoly<Rational> nonconstant_poly(int max_deg) {
        for (;;) {
            auto p = poly(max_deg);
            if (p.degree() >= 1) return p;
        }
    }

    ParamPoly param_poly(int terms = 4) {
        std::vector<ParamPoly::Term> t;
        for (int i = 0; i < terms; ++i)
            t.push_back({{int(integer(0, 4)), int(integer(-2, 3))}, rational(6, 3)});
        return ParamPoly::from_terms(std::move(t));
    }
};

} // namespace gen
