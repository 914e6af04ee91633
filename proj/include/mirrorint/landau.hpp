#pragma once

// Landau's function, the sets D and E, and the integrality classifier.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"

namespace mirrorint {

using RationalPoint = std::vector<QRational>;

inline std::string to_string(const RationalPoint& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += x[i].get_str();
    }
    return s + ")";
}

inline Integer floor_q(const QRational& x)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

inline QRational dot(std::span<const std::int64_t> c, const RationalPoint& x)
{
    if (c.size() != x.size()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    QRational s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            s += QRational{static_cast<long>(c[i])} * x[i];
        }
    }
    return s;
}

inline RationalPoint fractional_part(const RationalPoint& x)
{
    RationalPoint r = x;
    for (auto& v : r) {
        v -= floor_q(v);
    }
    return r;
}

/// Sum of floor(e_i.x) minus sum of floor(f_j.x).
inline std::int64_t delta_at(const FormSystem& sys, const RationalPoint& x)
{
    if (x.size() != sys.dim()) {
        throw std::invalid_argument("delta_at: dimension mismatch");
    }
    Integer s = 0;
    for (const auto& c : sys.e()) {
        s += floor_q(dot(c, x));
    }
    for (const auto& c : sys.f()) {
        s -= floor_q(dot(c, x));
    }
    return s.get_si();
}

inline bool in_D(const FormSystem& sys, const RationalPoint& x)
{
    if (x.size() != sys.dim()) {
        throw std::invalid_argument("in_D: dimension mismatch");
    }
    for (const auto& v : x) {
        if (v < 0 || v >= 1) {
            throw std::domain_error("in_D: coordinate outside [0,1): " + to_string(x));
        }
    }
    for (const auto& c : sys.forms()) {
        if (dot(c, x) >= 1) {
            return true;
        }
    }
    return false;
}

/// Integer form of in_D for the point {u / M} (componentwise residues).
inline bool in_D_fraction(const FormSystem& sys, std::span<const std::int64_t> u, std::int64_t modulus)
{
    sys.check_dim(u);
    IndexVec r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        r[i] = ((u[i] % modulus) + modulus) % modulus;
    }
    for (const auto& c : sys.forms()) {
        if (dot(c, r) >= modulus) {
            return true;
        }
    }
    return false;
}

/// Nonzero L dominated componentwise by some form vector, in lexicographic order.
inline std::vector<IndexVec> enumerate_E(const FormSystem& sys)
{
    std::set<IndexVec> out;
    for (const auto& c : sys.forms()) {
        IndexVec L(c.size(), 0);
        while (true) {
            if (!is_zero(L)) {
                out.insert(L);
            }
            std::size_t i = 0;
            while (i < L.size() && L[i] == c[i]) {
                L[i] = 0;
                ++i;
            }
            if (i == L.size()) {
                break;
            }
            ++L[i];
        }
    }
    return {out.begin(), out.end()};
}

enum class VerdictTag { NotNonnegative, CaseI, CaseII, EStrictlyBigger };

inline std::string to_string(VerdictTag t)
{
    switch (t) {
    case VerdictTag::NotNonnegative: return "NotNonnegative";
    case VerdictTag::CaseI: return "CaseI";
    case VerdictTag::CaseII: return "CaseII";
    case VerdictTag::EStrictlyBigger: return "EStrictlyBigger";
    }
    return "?";
}

enum class Strategy { Exhaustive, Grid, Sampled };

inline std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::Exhaustive: return "exhaustive";
    case Strategy::Grid: return "grid";
    case Strategy::Sampled: return "sampled";
    }
    return "?";
}

inline Strategy parse_strategy(const std::string& s)
{
    if (s == "exhaustive" || s == "vertex") {
        return Strategy::Exhaustive;
    }
    if (s == "grid") {
        return Strategy::Grid;
    }
    if (s == "sampled" || s == "random") {
        return Strategy::Sampled;
    }
    throw std::invalid_argument("unknown strategy: " + s);
}

struct ClassifyOptions
{
    Strategy strategy = Strategy::Exhaustive;
    std::uint64_t budget = 2'000'000;
    std::int64_t grid_multiplier = 4;
    bool cross_check = true;
    std::size_t random_samples = 20'000;
    std::uint64_t seed = 20240601;
};

struct CertificatePoint
{
    RationalPoint x;
    std::int64_t delta;
};

struct CriterionVerdict
{
    VerdictTag tag = VerdictTag::CaseI;
    std::optional<RationalPoint> witness;
    std::optional<std::size_t> coordinate; // 1-based
    std::vector<CertificatePoint> certificate;
    bool sampled = false;
    bool budget_exceeded = false;
    Strategy strategy = Strategy::Exhaustive;
    std::uint64_t candidates = 0;
    std::optional<Strategy> cross_checked_with;
};

class BudgetExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Hyperplane
{
    std::vector<std::int64_t> a;
    QRational b;
};

// Unique solution of A x = b, or nullopt when singular.
inline std::optional<RationalPoint> solve(std::vector<std::vector<QRational>> A, std::vector<QRational> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) {
            ++piv;
        }
        if (piv == n) {
            return std::nullopt;
        }
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) {
                continue;
            }
            QRational factor = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) {
                A[r][c] -= factor * A[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    RationalPoint x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = b[i] / A[i][i];
    }
    return x;
}

// Calls fn on every k-subset of {0..n-1}; stops early when fn returns false.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn)
{
    if (k > n) {
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        if (!fn(idx)) {
            return;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

inline QRational binom_estimate(std::size_t n, std::size_t k)
{
    return QRational{binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k))};
}

class Counter
{
public:
    explicit Counter(std::uint64_t budget) : budget_(budget) {}
    void add(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > budget_) {
            throw BudgetExceeded("candidate budget of " + std::to_string(budget_) + " exceeded");
        }
    }
    std::uint64_t used() const { return used_; }
    std::uint64_t remaining() const { return budget_ > used_ ? budget_ - used_ : 0; }

private:
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

// One interior point of every full-dimensional cell of the arrangement `hs`
// inside the open box (0,1)^k, by cylindrical slicing along the first axis.
inline void cell_samples(std::size_t k, const std::vector<Hyperplane>& hs, RationalPoint& prefix,
                         std::vector<RationalPoint>& out, Counter& counter)
{
    std::set<QRational> crit{QRational{0}, QRational{1}};
    if (k == 1) {
        for (const auto& h : hs) {
            QRational t = h.b / QRational{static_cast<long>(h.a[0])};
            if (t > 0 && t < 1) {
                crit.insert(t);
            }
        }
    } else {
        std::vector<Hyperplane> all = hs;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::int64_t> a(k, 0);
            a[i] = 1;
            all.push_back({a, 0});
            all.push_back({a, 1});
        }
            if (binom_estimate(all.size(), k) > QRational{static_cast<unsigned long>(counter.remaining())}) {
            throw BudgetExceeded("arrangement too large for vertex enumeration");
        }
        for_each_subset(all.size(), k, [&](const std::vector<std::size_t>& idx) {
            counter.add();
            std::vector<std::vector<QRational>> A;
            std::vector<QRational> b;
            for (auto i : idx) {
                A.emplace_back(all[i].a.begin(), all[i].a.end());
                b.push_back(all[i].b);
            }
            auto x = solve(std::move(A), std::move(b));
            if (x && std::all_of(x->begin(), x->end(), [](const QRational& v) { return v >= 0 && v <= 1; })) {
                crit.insert((*x)[0]);
            }
            return true;
        });
    }
    std::vector<QRational> cs(crit.begin(), crit.end());
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        QRational t = (cs[i] + cs[i + 1]) / 2;
        prefix.push_back(t);
        if (k == 1) {
            counter.add();
            out.push_back(prefix);
        } else {
            std::vector<Hyperplane> sliced;
            for (const auto& h : hs) {
                std::vector<std::int64_t> a(h.a.begin() + 1, h.a.end());
                if (is_zero(a)) {
                    continue;
                }
                sliced.push_back({std::move(a), h.b - QRational{static_cast<long>(h.a[0])} * t});
            }
            cell_samples(k - 1, sliced, prefix, out, counter);
        }
        prefix.pop_back();
    }
}

// Points in [0,1]^d obtained from half-open samples y by setting zero
// coordinates to 1 in every combination.
inline std::vector<RationalPoint> close_box(const std::vector<RationalPoint>& half_open)
{
    std::set<RationalPoint> out;
    for (const auto& y : half_open) {
        std::vector<std::size_t> zeros;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0) {
                zeros.push_back(i);
            }
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << zeros.size()); ++mask) {
            RationalPoint z = y;
            for (std::size_t j = 0; j < zeros.size(); ++j) {
                if ((mask >> j) & 1U) {
                    z[zeros[j]] = 1;
                }
            }
            out.insert(std::move(z));
        }
    }
    return {out.begin(), out.end()};
}

inline std::int64_t grid_denominator(const FormSystem& sys, std::int64_t multiplier)
{
    std::int64_t l = 1;
    for (const auto& c : sys.forms()) {
        for (auto v : c) {
            if (v != 0) {
                l = std::lcm(l, v);
            }
        }
    }
    return l * multiplier;
}

inline std::vector<RationalPoint> grid_points(const FormSystem& sys, std::int64_t N, Counter& counter)
{
    const std::size_t d = sys.dim();
    std::vector<RationalPoint> pts;
    IndexVec k(d, 0);
    while (true) {
        counter.add();
        RationalPoint x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = QRational{static_cast<long>(k[i]), static_cast<unsigned long>(N)};
            x[i].canonicalize();
        }
        pts.push_back(std::move(x));
        std::size_t i = 0;
        while (i < d && k[i] == N - 1) {
            k[i] = 0;
            ++i;
        }
        if (i == d) {
            break;
        }
        ++k[i];
    }
    return pts;
}

// Solutions in [0,1)^d of d-subsets of {c.x = m : 0 <= m < |c|} and {x_i = 0}.
inline std::vector<RationalPoint> vertex_points(const FormSystem& sys, Counter& counter)
{
    const std::size_t d = sys.dim();
    std::set<std::pair<IndexVec, std::int64_t>> seen;
    std::vector<Hyperplane> hs;
    for (const auto& c : sys.forms()) {
        for (std::int64_t m = 0; m < total_degree(c); ++m) {
            if (seen.insert({c, m}).second) {
                hs.push_back({c, m});
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::int64_t> a(d, 0);
        a[i] = 1;
        hs.push_back({a, 0});
    }
    if (binom_estimate(hs.size(), d) > QRational{static_cast<unsigned long>(counter.remaining())}) {
        throw BudgetExceeded("vertex candidate count exceeds budget");
    }
    std::set<RationalPoint> out;
    for_each_subset(hs.size(), d, [&](const std::vector<std::size_t>& idx) {
        counter.add();
        std::vector<std::vector<QRational>> A;
        std::vector<QRational> b;
        for (auto i : idx) {
            A.emplace_back(hs[i].a.begin(), hs[i].a.end());
            b.push_back(hs[i].b);
        }
        auto x = solve(std::move(A), std::move(b));
        if (x && std::all_of(x->begin(), x->end(), [](const QRational& v) { return v >= 0 && v < 1; })) {
            out.insert(std::move(*x));
        }
        return true;
    });
    return {out.begin(), out.end()};
}

// Interior samples of every full-dimensional cell of every coordinate face
// {x_i = 0 : i not in T} of [0,1)^d, plus the origin. Vertices alone can miss
// cells whose closure vertices all lie on the far side of the up-right probe.
inline std::vector<RationalPoint> face_cell_points(const FormSystem& sys, Counter& counter)
{
    const std::size_t d = sys.dim();
    std::vector<RationalPoint> out{RationalPoint(d, QRational{0})};
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < d; ++i) {
            if ((mask >> i) & 1U) {
                free.push_back(i);
            }
        }
        std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen;
        std::vector<Hyperplane> hs;
        for (const auto& c : sys.forms()) {
            std::vector<std::int64_t> a;
            for (auto i : free) {
                a.push_back(c[i]);
            }
            for (std::int64_t m = 1; m < total_degree(a); ++m) {
                if (seen.insert({a, m}).second) {
                    hs.push_back({a, m});
                }
            }
        }
        RationalPoint prefix;
        std::vector<RationalPoint> local;
        cell_samples(free.size(), hs, prefix, local, counter);
        for (const auto& y : local) {
            RationalPoint x(d, QRational{0});
            for (std::size_t j = 0; j < free.size(); ++j) {
                x[free[j]] = y[j];
            }
            out.push_back(std::move(x));
        }
    }
    return out;
}

inline std::vector<RationalPoint> random_points(const FormSystem& sys, std::size_t count, std::uint64_t seed,
                                                std::int64_t max_den)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> den_dist(1, std::max<std::int64_t>(max_den, 2));
    std::vector<RationalPoint> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        RationalPoint x(sys.dim());
        for (auto& v : x) {
            const std::int64_t den = den_dist(rng);
            std::uniform_int_distribution<std::int64_t> num_dist(0, den - 1);
            v = QRational{static_cast<long>(num_dist(rng)), static_cast<unsigned long>(den)};
            v.canonicalize();
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

// The verdict implied by Delta on a finite candidate set in [0,1)^d.
inline CriterionVerdict decide(const FormSystem& sys, std::vector<RationalPoint> half_open)
{
    std::sort(half_open.begin(), half_open.end());
    half_open.erase(std::unique(half_open.begin(), half_open.end()), half_open.end());

    CriterionVerdict v;
    for (const auto& x : close_box(half_open)) {
        if (delta_at(sys, x) < 0) {
            v.tag = VerdictTag::NotNonnegative;
            v.witness = x;
            return v;
        }
    }
    if (!sys.balanced()) {
        for (std::size_t k = 0; k < sys.dim(); ++k) {
            if (sys.sum_e()[k] > sys.sum_f()[k]) {
                v.tag = VerdictTag::EStrictlyBigger;
                v.coordinate = k + 1;
                return v;
            }
        }
        throw std::logic_error("nonnegative Delta with |e| < |f| in some coordinate");
    }
    for (const auto& x : half_open) {
        if (!in_D(sys, x)) {
            continue;
        }
        const auto dx = delta_at(sys, x);
        if (dx < 1) {
            v.tag = VerdictTag::CaseII;
            v.witness = x;
            v.certificate.clear();
            return v;
        }
        v.certificate.push_back({x, dx});
    }
    v.tag = VerdictTag::CaseI;
    return v;
}

} // namespace detail

/// Up-right probe size: the grid-resolution epsilon, shrunk if x sits closer
/// than that to the next integer level of some form or to the box wall.
inline QRational probe_epsilon(const FormSystem& sys, const RationalPoint& x, std::int64_t grid_multiplier = 4)
{
    const std::int64_t N = detail::grid_denominator(sys, grid_multiplier);
    const std::int64_t dmax = std::max<std::int64_t>(sys.max_coefficient_sum(), 1);
    QRational eps{1, static_cast<unsigned long>(2 * N * dmax)};
    eps.canonicalize();
    for (const auto& c : sys.forms()) {
        const QRational val = dot(c, x);
        const QRational gap = QRational{floor_q(val) + 1} - val;
        eps = std::min(eps, QRational{gap / (2 * std::max<std::int64_t>(total_degree(c), 1))});
    }
    for (const auto& v : x) {
        if (v < 1) {
            eps = std::min(eps, QRational{(1 - v) / 2});
        }
    }
    return eps;
}

/// Runs one strategy without cross-checking.
inline CriterionVerdict classify_with(const FormSystem& sys, Strategy strategy, const ClassifyOptions& opt = {})
{
    detail::Counter counter(opt.budget);
    const std::int64_t N = detail::grid_denominator(sys, opt.grid_multiplier);
    std::vector<RationalPoint> pts;
    CriterionVerdict v;
    bool exceeded = false;
    switch (strategy) {
    case Strategy::Exhaustive:
        try {
            pts = detail::vertex_points(sys, counter);
            auto cells = detail::face_cell_points(sys, counter);
            pts.insert(pts.end(), cells.begin(), cells.end());
        } catch (const BudgetExceeded&) {
            exceeded = true;
        }
        break;
    case Strategy::Grid:
        pts = detail::grid_points(sys, N, counter);
        break;
    case Strategy::Sampled:
        break;
    }
    if (exceeded || strategy == Strategy::Sampled) {
        detail::Counter unlimited(std::numeric_limits<std::uint64_t>::max());
        pts = detail::grid_points(sys, N, unlimited);
        auto extra = detail::random_points(sys, opt.random_samples, opt.seed, 8 * N);
        pts.insert(pts.end(), extra.begin(), extra.end());
    }
    v = detail::decide(sys, std::move(pts));
    v.strategy = strategy;
    v.candidates = counter.used();
    v.budget_exceeded = exceeded;
    v.sampled = v.tag == VerdictTag::CaseI && (exceeded || strategy != Strategy::Exhaustive);
    return v;
}

/// Classifies sys into the dichotomies; the exhaustive strategy is always
/// cross-validated by the grid strategy unless disabled.
inline CriterionVerdict classify(const FormSystem& sys, const ClassifyOptions& opt = {})
{
    CriterionVerdict v = classify_with(sys, opt.strategy, opt);
    if (opt.cross_check && opt.strategy != Strategy::Grid) {
        CriterionVerdict g = classify_with(sys, Strategy::Grid, opt);
        if (g.tag != v.tag) {
            throw std::logic_error("classifier strategies disagree: " + to_string(opt.strategy) + " gives " +
                                   to_string(v.tag) + ", grid gives " + to_string(g.tag));
        }
        v.cross_checked_with = Strategy::Grid;
    }
    return v;
}

struct JumpProfile
{
    std::vector<QRational> abscissas;
    std::vector<std::int64_t> amplitudes;
};

inline FormSystem univariate_system(const std::vector<std::int64_t>& E, const std::vector<std::int64_t>& F)
{
    std::vector<IndexVec> e;
    std::vector<IndexVec> f;
    for (auto a : E) {
        e.push_back({a});
    }
    for (auto b : F) {
        f.push_back({b});
    }
    return FormSystem(FormSystem::raw, 1, e, f);
}

/// Jump points and amplitudes of Delta_{E,F} on (0,1].
inline JumpProfile univariate_jump_profile(const std::vector<std::int64_t>& E, const std::vector<std::int64_t>& F)
{
    for (auto a : E) {
        if (a < 1) {
            throw std::invalid_argument("jump profile: entries must be positive");
        }
        if (std::find(F.begin(), F.end(), a) != F.end()) {
            throw std::invalid_argument("jump profile: E and F overlap at " + std::to_string(a));
        }
    }
    for (auto b : F) {
        if (b < 1) {
            throw std::invalid_argument("jump profile: entries must be positive");
        }
    }
    std::set<QRational> gammas;
    for (const auto& list : {E, F}) {
        for (auto a : list) {
            for (std::int64_t j = 1; j <= a; ++j) {
                QRational g{static_cast<long>(j), static_cast<unsigned long>(a)};
                g.canonicalize();
                gammas.insert(g);
            }
        }
    }
    JumpProfile jp;
    for (const auto& g : gammas) {
        std::int64_t m = 0;
        for (auto a : E) {
            if (QRational{g * a}.get_den() == 1) {
                ++m;
            }
        }
        for (auto b : F) {
            if (QRational{g * b}.get_den() == 1) {
                --m;
            }
        }
        jp.abscissas.push_back(g);
        jp.amplitudes.push_back(m);
    }
    return jp;
}

inline QRational rational_pow(const QRational& base, std::int64_t e)
{
    QRational r = 1;
    const QRational b = e >= 0 ? base : QRational{1 / base};
    for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) {
        r *= b;
    }
    return r;
}

/// Checks sum_{k<=i0} m_k/gamma_k > 0 and prod_{k<=i0} (1+1/gamma_k)^{m_k} > 1.
/// i0 is 1-based; Delta must be nonnegative on [gamma_1, gamma_i0].
inline bool lemma16D_check(const std::vector<std::int64_t>& E, const std::vector<std::int64_t>& F, std::size_t i0)
{
    const JumpProfile jp = univariate_jump_profile(E, F);
    if (i0 < 1 || i0 > jp.abscissas.size()) {
        throw std::out_of_range("lemma16D_check: i0 out of range");
    }
    std::int64_t prefix = 0;
    QRational sum = 0;
    QRational prod = 1;
    for (std::size_t k = 0; k < i0; ++k) {
        prefix += jp.amplitudes[k];
        if (prefix < 0) {
            throw std::domain_error("lemma16D_check: Delta is negative at " + jp.abscissas[k].get_str());
        }
        sum += QRational{static_cast<long>(jp.amplitudes[k])} / jp.abscissas[k];
        prod *= rational_pow(1 + 1 / jp.abscissas[k], jp.amplitudes[k]);
    }
    return sum > 0 && prod > 1;
}

} // namespace mirrorint
