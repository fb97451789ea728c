#pragma once

#include "unipoly.hpp"

namespace isingmaps {

namespace detail {

template <class R>
R ring_pow(const R& x, int e, const R& like) {
    R r = Ring<R>::one(like);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

/// Res(a, b) = lc(a)^deg b · ∏ b(α), α roots of a; subresultant PRS.
template <class R>
R std_resultant(UniPoly<R> a, UniPoly<R> b) {
    if (a.is_zero() || b.is_zero()) throw InvalidArgument("resultant of a zero polynomial");
    const R like = a.lc();
    bool neg = false;
    if (a.degree() < b.degree()) {
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) neg = true;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        R r = detail::ring_pow(b.lc(), a.degree(), like);
        return neg ? R(-r) : r;
    }
    R g = Ring<R>::one(like), h = Ring<R>::one(like);
    for (;;) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) neg = !neg;
        UniPoly<R> r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return Ring<R>::zero(like);
        R div = g * detail::ring_pow(h, delta, like);
        std::vector<R> rc;
        for (auto& v : r.coeffs()) rc.push_back(Ring<R>::exact_div(v, div));
        b = UniPoly<R>(std::move(rc));
        g = a.lc();
        // h ← g^δ / h^(δ−1)
        if (delta == 0) {
            h = h;
        } else {
            h = Ring<R>::exact_div(detail::ring_pow(g, delta, like), detail::ring_pow(h, delta - 1, like));
        }
        if (b.degree() == 0) break;
    }
    // lc(b)^deg a / h^(deg a − 1)
    const int da = a.degree();
    R res = Ring<R>::exact_div(detail::ring_pow(b.lc(), da, like), detail::ring_pow(h, da - 1, like));
    return neg ? R(-res) : res;
}

} // namespace detail

/// res(p, q) = lc(q)^deg p · ∏ p(β), β the roots of q.
template <class R>
R resultant(const UniPoly<R>& p, const UniPoly<R>& q) {
    return detail::std_resultant(q, p);
}

/// disc(p) = (−1)^(d(d−1)/2) · res(p, p′) / lc(p).
template <class R>
R discriminant(const UniPoly<R>& p) {
    const int d = p.degree();
    if (d < 1) throw InvalidArgument("discriminant needs degree >= 1");
    if (d == 1) return Ring<R>::one(p.lc());
    R r = Ring<R>::exact_div(resultant(p, p.derivative()), p.lc());
    return ((d * (d - 1) / 2) % 2) ? R(-r) : r;
}

} // namespace isingmaps
