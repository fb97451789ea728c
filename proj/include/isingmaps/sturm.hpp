#pragma once

#include <optional>
#include <vector>

#include "unipoly.hpp"

namespace isingmaps {

namespace detail {

/// Integer primitive form with the sign of p kept.
inline UniPoly<Rational> positive_rescale(const UniPoly<Rational>& p) {
    UniPoly<Rational> q = primitive_part(p);
    return (sign(q.lc()) == sign(p.lc())) ? q : -q;
}

} // namespace detail

/// Sturm sequence p, p′, −rem(...), each rescaled by a positive constant.
inline std::vector<UniPoly<Rational>> sturm_sequence(const UniPoly<Rational>& p) {
    std::vector<UniPoly<Rational>> s{detail::positive_rescale(p)};
    if (p.degree() < 1) return s;
    s.push_back(detail::positive_rescale(p.derivative()));
    while (s.back().degree() > 0) {
        auto r = divmod(s[s.size() - 2], s.back()).second;
        if (r.is_zero()) break;
        s.push_back(detail::positive_rescale(-r));
    }
    return s;
}

inline int sign_variations(const std::vector<UniPoly<Rational>>& seq, const Rational& x) {
    int v = 0, last = 0;
    for (auto& q : seq) {
        int s = sign(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Number of distinct real roots of p in (a, b].
inline int sturm_count(const UniPoly<Rational>& p, const Rational& a, const Rational& b) {
    if (!(a < b)) throw DegenerateInterval("sturm_count needs a < b");
    if (p.is_zero()) throw InvalidArgument("sturm_count of the zero polynomial");
    if (p.degree() == 0) return 0;
    auto seq = sturm_sequence(squarefree_part(p));
    return sign_variations(seq, a) - sign_variations(seq, b);
}

/// Half-open isolating interval (lo, hi]; lo == hi marks an exact rational root.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
};

/// Power of two strictly above every |root| (Cauchy bound).
inline Rational cauchy_bound(const UniPoly<Rational>& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p[i] / p.lc())));
    Rational b = 1;
    while (b <= m + 1) b *= 2;
    return b;
}

namespace detail {

inline void isolate(const std::vector<UniPoly<Rational>>& seq, const UniPoly<Rational>& sf, Rational lo,
                    Rational hi, int vlo, int vhi, std::vector<RootInterval>& out) {
    int n = vlo - vhi;
    if (n == 0) return;
    if (n == 1) {
        if (sf.eval(hi) == 0) out.push_back({hi, hi});
        else out.push_back({lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    int vm = sign_variations(seq, mid);
    isolate(seq, sf, lo, mid, vlo, vm, out);
    isolate(seq, sf, mid, hi, vm, vhi, out);
}

} // namespace detail

/// Disjoint isolating intervals of the real roots of p inside (a, b], increasing.
inline std::vector<RootInterval> isolate_real_roots(const UniPoly<Rational>& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw InvalidArgument("isolate_real_roots of the zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    if (!(a < b)) throw DegenerateInterval("isolate_real_roots needs a < b");
    UniPoly<Rational> sf = squarefree_part(p);
    auto seq = sturm_sequence(sf);
    detail::isolate(seq, sf, a, b, sign_variations(seq, a), sign_variations(seq, b), out);
    return out;
}

/// All real roots, within the Cauchy bound.
inline std::vector<RootInterval> isolate_real_roots(const UniPoly<Rational>& p) {
    if (p.is_zero()) throw InvalidArgument("isolate_real_roots of the zero polynomial");
    if (p.degree() < 1) return {};
    Rational b = cauchy_bound(p);
    return isolate_real_roots(p, -b, b);
}

/// Shrinks an isolating interval below `width` by sign bisection. Snaps to an
/// exact root when the simplest rational in the interval is one.
inline RootInterval refine_root(const UniPoly<Rational>& p, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    UniPoly<Rational> sf = squarefree_part(p);
    if (sf.eval(iv.hi) == 0) return {iv.hi, iv.hi};
    int shi = sign(sf.eval(iv.hi));
    int steps = 0;
    while (iv.width() > width) {
        if ((++steps & 7) == 0) {
            Rational cand = simplest_between(iv.lo, iv.hi);
            if (cand != iv.lo && sf.eval(cand) == 0) return {cand, cand};
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = sign(sf.eval(mid));
        if (sm == 0) return {mid, mid};
        if (sm == shi) iv.hi = mid;
        else iv.lo = mid;
    }
    Rational cand = simplest_between(iv.lo, iv.hi);
    if (cand != iv.lo && sf.eval(cand) == 0) return {cand, cand};
    return iv;
}

/// Exact rational root inside an isolating interval, if there is one.
/// Refines below 1/L² (L = leading coefficient of the primitive form): then
/// the simplest rational in the interval is the only candidate.
inline std::optional<Rational> rational_root_in(const UniPoly<Rational>& p, RootInterval iv) {
    if (iv.exact()) return iv.lo;
    UniPoly<Rational> sf = squarefree_part(p);
    Rational l = abs(sf.lc());
    iv = refine_root(sf, iv, Rational(1) / (l * l * 2));
    if (iv.exact()) return iv.lo;
    Rational cand = simplest_between(iv.lo, iv.hi);
    if (cand != iv.lo && sf.eval(cand) == 0) return cand;
    return std::nullopt;
}

} // namespace isingmaps
