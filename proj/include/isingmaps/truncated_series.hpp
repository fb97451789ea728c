#pragma once

#include <type_traits>
#include <vector>

#include "unipoly.hpp"

namespace isingmaps {

/// Power series in z truncated after z^order; never reads past the order.
template <class R>
class TruncatedSeries {
public:
    TruncatedSeries(int order, const R& like) : c_(std::size_t(check(order)) + 1, Ring<R>::zero(like)) {}
    TruncatedSeries(std::vector<R> coeffs, int order, const R& like) : c_(std::move(coeffs)) {
        c_.resize(std::size_t(check(order)) + 1, Ring<R>::zero(like));
    }

    int order() const { return int(c_.size()) - 1; }
    const R& operator[](int i) const { return c_[std::size_t(i)]; }
    R& operator[](int i) { return c_[std::size_t(i)]; }
    const std::vector<R>& coeffs() const { return c_; }
    const R& like() const { return c_[0]; }

    /// Same series at a different order (pads with zeros).
    TruncatedSeries resized(int order) const { return TruncatedSeries(c_, order, c_[0]); }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order(), b.order());
        TruncatedSeries r(n, a.like());
        for (int i = 0; i <= n; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        int n = std::min(a.order(), b.order());
        TruncatedSeries r(n, a.like());
        for (int i = 0; i <= n; ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const R& s) {
        TruncatedSeries r = a;
        for (auto& v : r.c_) v = v * s;
        return r;
    }
    friend TruncatedSeries operator*(const R& s, const TruncatedSeries& a) { return a * s; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const int n = std::min(a.order(), b.order());
        TruncatedSeries r(n, a.like());
        int va = a.valuation(), vb = b.valuation();
        for (int i = va; i <= n; ++i) {
            if (Ring<R>::is_zero(a[i])) continue;
            for (int j = vb; i + j <= n; ++j) {
                if constexpr (std::is_same_v<R, Real>)
                    r[i + j].add_product(a[i], b[j]);
                else
                    r[i + j] = r[i + j] + a[i] * b[j];
            }
        }
        return r;
    }

    /// Index of the first coefficient that is not exactly zero (order+1 if none).
    int valuation() const {
        int v = 0;
        while (v <= order() && Ring<R>::is_zero(c_[std::size_t(v)])) ++v;
        return v;
    }

    /// z·f, keeping the order.
    TruncatedSeries times_z() const {
        TruncatedSeries r(order(), like());
        for (int i = order(); i >= 1; --i) r[i] = c_[std::size_t(i - 1)];
        return r;
    }

    /// f / z^k; the result has order order()−k. Caller checks the low coefficients.
    TruncatedSeries divided_by_z(int k) const {
        return TruncatedSeries(std::vector<R>(c_.begin() + k, c_.end()), order() - k, like());
    }

    /// 1/f; requires an invertible constant term.
    TruncatedSeries inverse() const {
        TruncatedSeries r(order(), like());
        r[0] = Ring<R>::exact_div(Ring<R>::one(c_[0]), c_[0]);
        for (int k = 1; k <= order(); ++k) {
            R acc = Ring<R>::zero(c_[0]);
            for (int j = 1; j <= k; ++j) {
                if constexpr (std::is_same_v<R, Real>)
                    acc.add_product(c_[std::size_t(j)], r[k - j]);
                else
                    acc = acc + c_[std::size_t(j)] * r[k - j];
            }
            r[k] = Ring<R>::exact_div(-acc, c_[0]);
        }
        return r;
    }

    /// p(f) by Horner, p with coefficients in R.
    friend TruncatedSeries compose(const UniPoly<R>& p, const TruncatedSeries& f) {
        TruncatedSeries r(f.order(), f.like());
        for (int i = p.degree(); i >= 0; --i) {
            r = r * f;
            r[0] = r[0] + p[i];
        }
        return r;
    }

private:
    static int check(int order) {
        if (order < 0) throw InvalidArgument("series order must be nonnegative");
        return order;
    }
    std::vector<R> c_;
};

} // namespace isingmaps
