#pragma once

// The hypergeometric series F, G_k, G_L of a form system, their canonical
// coordinates, mirror maps, and integrality scans.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forms.hpp"
#include "landau.hpp"
#include "series.hpp"

namespace mirrorint {

/// Calls fn on every n in N^d with |n| <= N, in lexicographic order.
inline void for_each_index(std::size_t d, std::int64_t N, const std::function<void(const IndexVec&)>& fn)
{
    IndexVec n(d, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t room) {
        if (i == d) {
            fn(n);
            return;
        }
        for (std::int64_t v = 0; v <= room; ++v) {
            n[i] = v;
            rec(i + 1, room - v);
        }
        n[i] = 0;
    };
    rec(0, N);
}

namespace detail {

inline MSeries build_weighted(const FormSystem& sys, std::int64_t N,
                              const std::function<QRational(const IndexVec&)>& weight)
{
    RatioCache Q(sys);
    MSeries out(sys.dim(), N);
    for_each_index(sys.dim(), N, [&](const IndexVec& n) {
        QRational w = weight(n);
        if (w != 0) {
            out.set(n, Q(n) * w);
        }
    });
    return out;
}

} // namespace detail

inline MSeries build_F(const FormSystem& sys, std::int64_t N)
{
    return detail::build_weighted(sys, N, [](const IndexVec&) { return QRational{1}; });
}

/// Harmonic weight of G_k at n (k is 1-based).
inline QRational gk_weight(const FormSystem& sys, std::size_t k, const IndexVec& n)
{
    if (k < 1 || k > sys.dim()) {
        throw std::out_of_range("G_k: k must lie in 1.." + std::to_string(sys.dim()));
    }
    QRational w = 0;
    for (const auto& c : sys.e()) {
        if (c[k - 1] != 0) {
            w += QRational{static_cast<long>(c[k - 1])} * harmonic(dot(c, n));
        }
    }
    for (const auto& c : sys.f()) {
        if (c[k - 1] != 0) {
            w -= QRational{static_cast<long>(c[k - 1])} * harmonic(dot(c, n));
        }
    }
    return w;
}

inline MSeries build_Gk(const FormSystem& sys, std::size_t k, std::int64_t N)
{
    if (k < 1 || k > sys.dim()) {
        throw std::out_of_range("build_Gk: k must lie in 1.." + std::to_string(sys.dim()));
    }
    return detail::build_weighted(sys, N, [&](const IndexVec& n) { return gk_weight(sys, k, n); });
}

inline bool in_E(const FormSystem& sys, const IndexVec& L)
{
    if (L.size() != sys.dim() || is_zero(L)) {
        return false;
    }
    for (const auto& c : sys.forms()) {
        if (dominates(c, L)) {
            return true;
        }
    }
    return false;
}

inline MSeries build_GL(const FormSystem& sys, const IndexVec& L, std::int64_t N)
{
    if (!in_E(sys, L)) {
        throw std::invalid_argument("build_GL: " + to_string(L) + " is not in E");
    }
    return detail::build_weighted(sys, N, [&](const IndexVec& n) { return harmonic(dot(L, n)); });
}

/// z_k exp(G / F) (k 1-based), or exp(G / F) when k is 0.
inline MSeries canonical_coordinate(const MSeries& F, const MSeries& G, std::size_t k)
{
    MSeries e = exp(G * reciprocal(F));
    if (k == 0) {
        return e;
    }
    return MSeries::variable(F.dim(), F.order(), k - 1) * e;
}

struct MirrorBundle
{
    FormSystem sys;
    std::int64_t order;
    bool balanced;
    MSeries F;
    std::vector<MSeries> G;
    std::map<IndexVec, MSeries> GL;
    std::vector<MSeries> q;
    std::map<IndexVec, MSeries> qL;
    std::vector<MSeries> zofq;
};

/// Builds every series of the bundle. Unbalanced systems use the same
/// formulas; `balanced` records the regime.
inline MirrorBundle build_bundle(const FormSystem& sys, std::int64_t N, bool with_inverse = true)
{
    const std::size_t d = sys.dim();
    MirrorBundle b{sys, N, sys.balanced(), build_F(sys, N), {}, {}, {}, {}, {}};
    const MSeries Finv = reciprocal(b.F);
    for (std::size_t k = 1; k <= d; ++k) {
        b.G.push_back(build_Gk(sys, k, N));
        b.q.push_back(MSeries::variable(d, N, k - 1) * exp(b.G.back() * Finv));
    }
    for (const auto& L : enumerate_E(sys)) {
        MSeries g = build_GL(sys, L, N);
        b.qL.emplace(L, exp(g * Finv));
        b.GL.emplace(L, std::move(g));
    }
    if (with_inverse) {
        b.zofq = invert_diagonal(b.q);
    }
    return b;
}

struct RetoucheResult
{
    bool ok = true;
    std::optional<std::size_t> k;
    std::optional<IndexVec> exponent;
};

/// Checks z_k^{-1} q_k = prod q_{e_i}^{e_i^(k)} / prod q_{f_j}^{f_j^(k)} for every k.
inline RetoucheResult check_retouche(const MirrorBundle& b)
{
    const std::size_t d = b.sys.dim();
    const MSeries Finv = reciprocal(b.F);
    for (std::size_t k = 1; k <= d; ++k) {
        // z_k^{-1} q_k at full order, without losing the top layer to the shift
        const MSeries lhs = exp(b.G[k - 1] * Finv);
        MSeries num = MSeries::one(d, b.order);
        MSeries den = MSeries::one(d, b.order);
        for (const auto& c : b.sys.e()) {
            for (std::int64_t t = 0; t < c[k - 1]; ++t) {
                num *= b.qL.at(c);
            }
        }
        for (const auto& c : b.sys.f()) {
            for (std::int64_t t = 0; t < c[k - 1]; ++t) {
                den *= b.qL.at(c);
            }
        }
        const MSeries rhs = num * reciprocal(den);
        if (!(lhs == rhs)) {
            const MSeries diff = lhs - rhs;
            IndexVec first = diff.terms().begin()->first;
            for (const auto& [e, c] : diff.terms()) {
                if (total_degree(e) < total_degree(first)) {
                    first = e;
                }
            }
            return {false, k, first};
        }
    }
    return {};
}

struct Violation
{
    IndexVec exponent;
    QRational coefficient;
    std::optional<Valuation> valuation;
};

struct ScanReport
{
    std::optional<std::uint64_t> prime;
    std::int64_t order = 0;
    std::vector<Violation> violations;
    bool truncated = false;

    bool integral() const { return violations.empty(); }
};

/// Non-integral coefficients (or negative v_p when p is given), at most `limit`,
/// ordered by total degree then lexicographically.
inline ScanReport integrality_scan(const MSeries& s, std::optional<std::uint64_t> p = std::nullopt,
                                   std::size_t limit = 20)
{
    if (p) {
        require_prime(*p);
    }
    ScanReport r;
    r.prime = p;
    r.order = s.order();
    for (const auto& layer : s.graded()) {
        for (const auto& [e, c] : layer) {
            bool bad = false;
            std::optional<Valuation> v;
            if (p) {
                v = vp_of_rational(c, *p);
                bad = *v < Valuation{0};
            } else {
                bad = c.get_den() != 1;
            }
            if (!bad) {
                continue;
            }
            if (r.violations.size() == limit) {
                r.truncated = true;
                return r;
            }
            r.violations.push_back({e, c, v});
        }
    }
    return r;
}

/// Lowest total degree carrying a violation; nullopt when integral to the order.
inline std::optional<std::int64_t> first_violation_degree(const MSeries& s,
                                                          std::optional<std::uint64_t> p = std::nullopt)
{
    const ScanReport r = integrality_scan(s, p, 1);
    if (r.integral()) {
        return std::nullopt;
    }
    return total_degree(r.violations.front().exponent);
}

/// Coefficient-wise equivalence of integrality of q and of the mirror maps:
/// for every truncation degree, all q_k are integral iff all z_k(q) are.
inline bool integrality_equivalence(const MirrorBundle& b, std::optional<std::uint64_t> p = std::nullopt)
{
    auto first = [&](const std::vector<MSeries>& v) {
        std::optional<std::int64_t> best;
        for (const auto& s : v) {
            auto f = first_violation_degree(s, p);
            if (f && (!best || *f < *best)) {
                best = f;
            }
        }
        return best;
    };
    return first(b.q) == first(b.zofq);
}

/// q(z(q)) = q and z(q(z)) = z to the bundle order.
inline bool inversion_round_trip(const MirrorBundle& b)
{
    const std::size_t d = b.sys.dim();
    for (std::size_t k = 0; k < d; ++k) {
        if (!(substitute(b.q[k], b.zofq) == MSeries::variable(d, b.order, k))) {
            return false;
        }
        if (!(substitute(b.zofq[k], b.q) == MSeries::variable(d, b.order, k))) {
            return false;
        }
    }
    return true;
}

} // namespace mirrorint
