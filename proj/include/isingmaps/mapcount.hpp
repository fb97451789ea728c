#pragma once

#include <future>
#include <map>
#include <numeric>
#include <vector>

#include "param_poly.hpp"

namespace isingmaps {

/// Tetravalent map on darts 1..4n: sigma = (1 2 3 4)(5 6 7 8)…, alpha an edge pairing.
/// Vertex i (0-based) owns darts 4i+1..4i+4; the root dart is 1.
struct DartMap {
    int n = 0;
    std::vector<int> alpha;  // 1-based; alpha[0] unused

    static int sigma(int d) { return ((d - 1) / 4) * 4 + (d % 4) + 1; }
    static int vertex(int d) { return (d - 1) / 4; }

    /// Builds from 1-based pairs, e.g. {{1,2},{3,4}}.
    static DartMap from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
        DartMap m{n, std::vector<int>(std::size_t(4 * n + 1), 0)};
        for (auto [a, b] : pairs) {
            if (a < 1 || b < 1 || a > 4 * n || b > 4 * n || a == b || m.alpha[std::size_t(a)] || m.alpha[std::size_t(b)])
                throw InvalidArgument("pairs do not form a fixed-point-free involution");
            m.alpha[std::size_t(a)] = b;
            m.alpha[std::size_t(b)] = a;
        }
        for (int d = 1; d <= 4 * n; ++d)
            if (!m.alpha[std::size_t(d)]) throw InvalidArgument("unpaired dart");
        return m;
    }

    /// Number of cycles of sigma∘alpha (alpha applied first).
    int faces() const {
        std::vector<char> seen(std::size_t(4 * n + 1), 0);
        int f = 0;
        for (int d = 1; d <= 4 * n; ++d) {
            if (seen[std::size_t(d)]) continue;
            ++f;
            for (int e = d; !seen[std::size_t(e)]; e = sigma(alpha[std::size_t(e)])) seen[std::size_t(e)] = 1;
        }
        return f;
    }

    bool connected() const {
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            return x;
        };
        int comps = n;
        for (int d = 1; d <= 4 * n; ++d) {
            int a = find(vertex(d)), b = find(vertex(alpha[std::size_t(d)]));
            if (a != b) parent[std::size_t(a)] = b, --comps;
        }
        return comps == 1;
    }

    /// V − E + F.
    int euler_characteristic() const { return n - 2 * n + faces(); }
};

/// Planar and connected.
inline bool genus_check(const DartMap& m) { return m.connected() && m.euler_characteristic() == 2; }

struct EnumerationResult {
    int n = 0;
    ParamPoly Z;                         // normalized partition function
    long long matchings = 0;             // all pairings, (4n−1)!!
    long long connected = 0;
    long long planar = 0;                // planar labelled pairings
    Rational rooted_maps;                // planar · 4n/(n!·4ⁿ)
    std::map<int, long long> genus_histogram;  // connected pairings by genus
    std::map<int, long long> euler_histogram;  // connected pairings by V − E + F
    bool edge_balance_ok = true;         // monochromatic + frustrated = 2n on every planar map
};

namespace detail {

struct MatchingWalker {
    int n;
    std::vector<int> alpha;  // 1-based
    // weight counts keyed by (monochromatic edges, σ₊ − σ₋)
    std::map<std::pair<int, int>, long long> weights;
    EnumerationResult stats;

    explicit MatchingWalker(int n_) : n(n_), alpha(std::size_t(4 * n_ + 1), 0) {}

    void visit_complete() {
        ++stats.matchings;
        DartMap m{n, alpha};
        if (!m.connected()) return;
        ++stats.connected;
        int chi = m.euler_characteristic();
        stats.euler_histogram[chi]++;
        stats.genus_histogram[(2 - chi) / 2]++;
        if (chi != 2) return;
        ++stats.planar;
        // all spin assignments with the root vertex ⊕
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (!(mask & 1u)) continue;
            int mono = 0, frustrated = 0;
            for (int d = 1; d <= 4 * n; ++d) {
                int e = alpha[std::size_t(d)];
                if (e < d) continue;
                bool sa = mask >> DartMap::vertex(d) & 1u, sb = mask >> DartMap::vertex(e) & 1u;
                (sa == sb ? mono : frustrated)++;
            }
            if (mono + frustrated != 2 * n) stats.edge_balance_ok = false;
            int plus = __builtin_popcount(mask);
            weights[{mono, plus - (n - plus)}]++;
        }
    }

    void walk() {
        int d = 1;
        while (d <= 4 * n && alpha[std::size_t(d)]) ++d;
        if (d > 4 * n) {
            visit_complete();
            return;
        }
        for (int e = d + 1; e <= 4 * n; ++e) {
            if (alpha[std::size_t(e)]) continue;
            alpha[std::size_t(d)] = e;
            alpha[std::size_t(e)] = d;
            walk();
            alpha[std::size_t(d)] = alpha[std::size_t(e)] = 0;
        }
    }
};

inline Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace detail

/// Exhaustive enumeration over all pairings of 4n darts; n ≤ 4.
/// `jobs` > 1 splits the work by the partner of dart 1.
inline EnumerationResult enumerate_maps(int n, int jobs = 1) {
    if (n < 1) throw InvalidArgument("n must be positive");
    if (n > 4) throw EnumerationBound("brute-force enumeration is limited to n <= 4 (got " + std::to_string(n) + ")");
    auto run = [n](int first_partner) {
        detail::MatchingWalker w(n);
        w.alpha[1] = first_partner;
        w.alpha[std::size_t(first_partner)] = 1;
        w.walk();
        return w;
    };
    std::vector<detail::MatchingWalker> parts;
    if (jobs <= 1) {
        for (int e = 2; e <= 4 * n; ++e) parts.push_back(run(e));
    } else {
        std::vector<std::future<detail::MatchingWalker>> fs;
        for (int e = 2; e <= 4 * n; ++e) fs.push_back(std::async(std::launch::async, run, e));
        for (auto& f : fs) parts.push_back(f.get());
    }
    EnumerationResult r;
    r.n = n;
    std::map<std::pair<int, int>, long long> weights;
    for (auto& p : parts) {
        r.matchings += p.stats.matchings;
        r.connected += p.stats.connected;
        r.planar += p.stats.planar;
        r.edge_balance_ok = r.edge_balance_ok && p.stats.edge_balance_ok;
        for (auto& [k, v] : p.stats.genus_histogram) r.genus_histogram[k] += v;
        for (auto& [k, v] : p.stats.euler_histogram) r.euler_histogram[k] += v;
        for (auto& [k, v] : p.weights) weights[k] += v;
    }
    const Rational norm = Rational(4 * n) / (detail::factorial(n) * pow(Rational(4), n));
    std::vector<ParamPoly::Term> terms;
    for (auto& [k, v] : weights) terms.push_back({{k.first, k.second}, Rational(v) * norm});
    r.Z = ParamPoly::from_terms(std::move(terms));
    r.rooted_maps = Rational(r.planar) * norm;
    return r;
}

/// Z_n(ν, c) by exhaustive enumeration; n ≤ 4.
inline ParamPoly bruteforce_Z(int n, int jobs = 1) { return enumerate_maps(n, jobs).Z; }

} // namespace isingmaps
