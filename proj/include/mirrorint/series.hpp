#pragma once

// Sparse multivariate power series over Q, truncated by total degree.

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"

namespace mirrorint {

class MSeries
{
public:
    using Terms = std::map<IndexVec, QRational>;

    MSeries(std::size_t d, std::int64_t order) : d_(d), order_(order)
    {
        if (d == 0) {
            throw std::invalid_argument("MSeries: dimension must be positive");
        }
        if (order < 0) {
            throw std::invalid_argument("MSeries: negative order");
        }
    }

    static MSeries constant(std::size_t d, std::int64_t order, const QRational& c)
    {
        MSeries s(d, order);
        s.set(IndexVec(d, 0), c);
        return s;
    }

    static MSeries one(std::size_t d, std::int64_t order) { return constant(d, order, 1); }

    /// The coordinate z_k (0-based).
    static MSeries variable(std::size_t d, std::int64_t order, std::size_t k)
    {
        if (k >= d) {
            throw std::out_of_range("MSeries::variable: index out of range");
        }
        IndexVec v(d, 0);
        v[k] = 1;
        MSeries s(d, order);
        s.set(v, 1);
        return s;
    }

    static MSeries monomial(std::size_t d, std::int64_t order, const IndexVec& exp, const QRational& c)
    {
        MSeries s(d, order);
        s.set(exp, c);
        return s;
    }

    std::size_t dim() const noexcept { return d_; }
    std::int64_t order() const noexcept { return order_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    QRational coeff(const IndexVec& exp) const
    {
        check_exp(exp);
        auto it = terms_.find(exp);
        return it == terms_.end() ? QRational{0} : it->second;
    }

    QRational constant_term() const { return coeff(IndexVec(d_, 0)); }

    /// Stores c at exp; zero coefficients and degrees above the order are dropped.
    void set(const IndexVec& exp, QRational c)
    {
        check_exp(exp);
        if (total_degree(exp) > order_) {
            return;
        }
        c.canonicalize();
        if (c == 0) {
            terms_.erase(exp);
        } else {
            terms_[exp] = std::move(c);
        }
    }

    void add_to(const IndexVec& exp, const QRational& c)
    {
        check_exp(exp);
        if (total_degree(exp) > order_ || c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(exp, c);
        if (!inserted) {
            it->second += c;
        }
        it->second.canonicalize();
        if (it->second == 0) {
            terms_.erase(it);
        }
    }

    /// Lowest total degree of a nonzero term; order+1 for the zero series.
    std::int64_t valuation() const
    {
        std::int64_t v = order_ + 1;
        for (const auto& [e, c] : terms_) {
            v = std::min(v, total_degree(e));
        }
        return v;
    }

    MSeries truncated(std::int64_t order) const
    {
        MSeries s(d_, std::min(order, order_));
        for (const auto& [e, c] : terms_) {
            s.set(e, c);
        }
        return s;
    }

    /// Terms grouped by total degree 0..order.
    std::vector<Terms> graded() const
    {
        std::vector<Terms> g(static_cast<std::size_t>(order_ + 1));
        for (const auto& [e, c] : terms_) {
            g[static_cast<std::size_t>(total_degree(e))].emplace(e, c);
        }
        return g;
    }

    static MSeries from_graded(std::size_t d, std::int64_t order, const std::vector<Terms>& g)
    {
        MSeries s(d, order);
        for (const auto& layer : g) {
            for (const auto& [e, c] : layer) {
                s.set(e, c);
            }
        }
        return s;
    }

    MSeries& operator+=(const MSeries& b)
    {
        check_compatible(b);
        for (const auto& [e, c] : b.terms_) {
            add_to(e, c);
        }
        return *this;
    }

    MSeries& operator-=(const MSeries& b)
    {
        check_compatible(b);
        for (const auto& [e, c] : b.terms_) {
            add_to(e, -c);
        }
        return *this;
    }

    MSeries& operator*=(const QRational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend MSeries operator+(MSeries a, const MSeries& b) { return a += b; }
    friend MSeries operator-(MSeries a, const MSeries& b) { return a -= b; }
    friend MSeries operator-(MSeries a) { return a *= QRational{-1}; }
    friend MSeries operator*(MSeries a, const QRational& s) { return a *= s; }
    friend MSeries operator*(const QRational& s, MSeries a) { return a *= s; }

    friend MSeries operator*(const MSeries& a, const MSeries& b)
    {
        a.check_compatible(b);
        MSeries out(a.d_, a.order_);
        const auto gb = b.graded();
        IndexVec e(a.d_);
        for (const auto& [ea, ca] : a.terms_) {
            const std::int64_t room = a.order_ - total_degree(ea);
            for (std::int64_t k = 0; k <= room; ++k) {
                for (const auto& [eb, cb] : gb[static_cast<std::size_t>(k)]) {
                    for (std::size_t i = 0; i < a.d_; ++i) {
                        e[i] = ea[i] + eb[i];
                    }
                    out.add_to(e, ca * cb);
                }
            }
        }
        return out;
    }

    MSeries& operator*=(const MSeries& b) { return *this = *this * b; }

    friend bool operator==(const MSeries& a, const MSeries& b)
    {
        return a.d_ == b.d_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += c.get_str();
            for (std::size_t i = 0; i < d_; ++i) {
                if (e[i] == 0) {
                    continue;
                }
                s += "*z" + std::to_string(i + 1);
                if (e[i] > 1) {
                    s += "^" + std::to_string(e[i]);
                }
            }
        }
        return s + " + O(deg " + std::to_string(order_ + 1) + ")";
    }

    void check_compatible(const MSeries& b) const
    {
        if (d_ != b.d_ || order_ != b.order_) {
            throw std::invalid_argument("MSeries: dimension/order mismatch");
        }
    }

private:
    void check_exp(const IndexVec& exp) const
    {
        if (exp.size() != d_) {
            throw std::invalid_argument("MSeries: exponent " + to_string(exp) + " has wrong dimension");
        }
        for (auto v : exp) {
            if (v < 0) {
                throw std::invalid_argument("MSeries: negative exponent " + to_string(exp));
            }
        }
    }

    std::size_t d_;
    std::int64_t order_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MSeries& s) { return os << s.str(); }

namespace detail {

// acc += x * y for homogeneous layers.
inline void mul_layer(MSeries::Terms& acc, const MSeries::Terms& x, const MSeries::Terms& y, const QRational& scale)
{
    for (const auto& [ex, cx] : x) {
        for (const auto& [ey, cy] : y) {
            IndexVec e(ex.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ex[i] + ey[i];
            }
            auto [it, inserted] = acc.try_emplace(std::move(e), scale * cx * cy);
            if (!inserted) {
                it->second += scale * cx * cy;
            }
        }
    }
}

inline void prune(MSeries::Terms& t)
{
    for (auto it = t.begin(); it != t.end();) {
        it = it->second == 0 ? t.erase(it) : std::next(it);
    }
}

} // namespace detail

/// 1/a for any series with nonzero constant term.
inline MSeries reciprocal(const MSeries& a)
{
    const QRational c = a.constant_term();
    if (c == 0) {
        throw std::domain_error("reciprocal: constant term is zero");
    }
    const auto N = static_cast<std::size_t>(a.order());
    const auto u = a.graded();
    std::vector<MSeries::Terms> r(N + 1);
    r[0].emplace(IndexVec(a.dim(), 0), 1 / c);
    const QRational minus_inv = -1 / c;
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            detail::mul_layer(r[n], u[k], r[n - k], minus_inv);
        }
        detail::prune(r[n]);
    }
    return MSeries::from_graded(a.dim(), a.order(), r);
}

/// exp(a) for a with zero constant term, via n f_n = sum k a_k f_{n-k}.
inline MSeries exp(const MSeries& a)
{
    if (a.constant_term() != 0) {
        throw std::domain_error("exp: constant term must be zero");
    }
    const auto N = static_cast<std::size_t>(a.order());
    const auto u = a.graded();
    std::vector<MSeries::Terms> f(N + 1);
    f[0].emplace(IndexVec(a.dim(), 0), 1);
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            detail::mul_layer(f[n], u[k], f[n - k],
                              frac(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)));
        }
        detail::prune(f[n]);
    }
    return MSeries::from_graded(a.dim(), a.order(), f);
}

/// log(a) for a with constant term 1.
inline MSeries log(const MSeries& a)
{
    if (a.constant_term() != 1) {
        throw std::domain_error("log: constant term must be 1");
    }
    const auto N = static_cast<std::size_t>(a.order());
    const auto u = a.graded();
    std::vector<MSeries::Terms> l(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        l[n] = u[n];
        for (std::size_t k = 1; k < n; ++k) {
            detail::mul_layer(l[n], l[k], u[n - k],
                              frac(-static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)));
        }
        detail::prune(l[n]);
    }
    return MSeries::from_graded(a.dim(), a.order(), l);
}

/// z -> z^p in every coordinate.
inline MSeries substitute_pth_power(const MSeries& a, std::int64_t p)
{
    if (p < 1) {
        throw std::invalid_argument("substitute_pth_power: p must be positive");
    }
    MSeries out(a.dim(), a.order());
    for (const auto& [e, c] : a.terms()) {
        IndexVec f = e;
        for (auto& v : f) {
            v *= p;
        }
        out.set(f, c);
    }
    return out;
}

/// z_i -> M_i z^{Nexp_i}; returns a univariate series of the same order.
inline MSeries specialize(const MSeries& a, const std::vector<std::int64_t>& M, const std::vector<std::int64_t>& Nexp)
{
    if (M.size() != a.dim() || Nexp.size() != a.dim()) {
        throw std::invalid_argument("specialize: length mismatch");
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (M[i] == 0) {
            throw std::invalid_argument("specialize: M entries must be nonzero");
        }
        if (Nexp[i] < 1) {
            throw std::invalid_argument("specialize: exponents must be positive");
        }
    }
    MSeries out(1, a.order());
    for (const auto& [e, c] : a.terms()) {
        const std::int64_t n = dot(e, Nexp);
        if (n > a.order()) {
            continue;
        }
        Integer w = 1;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            Integer mi = static_cast<long>(M[i]);
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), mi.get_mpz_t(), static_cast<unsigned long>(e[i]));
            w *= pw;
        }
        out.add_to({n}, QRational{w} * c);
    }
    return out;
}

/// a(s_1, ..., s_d) for substitutes s_k without constant term, truncated at
/// the substitutes' common order. Used for inversion and round-trip checks.
inline MSeries substitute(const MSeries& a, const std::vector<MSeries>& subs)
{
    if (subs.size() != a.dim()) {
        throw std::invalid_argument("substitute: need one series per variable");
    }
    const std::size_t d = subs.front().dim();
    const std::int64_t N = subs.front().order();
    for (const auto& s : subs) {
        if (s.dim() != d || s.order() != N) {
            throw std::invalid_argument("substitute: substitutes must share dimension and order");
        }
        if (s.constant_term() != 0) {
            throw std::domain_error("substitute: substitutes must have zero constant term");
        }
    }
    // Monomials in the substitutes, each built from a cached lower one.
    std::map<IndexVec, MSeries> mono;
    mono.emplace(IndexVec(a.dim(), 0), MSeries::one(d, N));
    std::function<const MSeries&(const IndexVec&)> power = [&](const IndexVec& e) -> const MSeries& {
        if (auto it = mono.find(e); it != mono.end()) {
            return it->second;
        }
        std::size_t j = e.size();
        while (e[j - 1] == 0) {
            --j;
        }
        IndexVec lower = e;
        --lower[j - 1];
        MSeries m = power(lower) * subs[j - 1];
        return mono.emplace(e, std::move(m)).first->second;
    };
    MSeries out(d, N);
    for (const auto& [e, c] : a.terms()) {
        if (total_degree(e) <= N) {
            out += power(e) * c;
        }
    }
    return out;
}

/// Compositional inverse of (z_1 u_1(z), ..., z_d u_d(z)) with u_k(0) = 1,
/// by the fixed point z_k <- q_k / u_k(z).
inline std::vector<MSeries> invert_diagonal(const std::vector<MSeries>& q)
{
    if (q.empty()) {
        throw std::invalid_argument("invert_diagonal: empty map");
    }
    const std::size_t d = q.size();
    const std::int64_t N = q.front().order();
    std::vector<MSeries> u;
    for (std::size_t k = 0; k < d; ++k) {
        if (q[k].dim() != d || q[k].order() != N) {
            throw std::invalid_argument("invert_diagonal: components must share dimension and order");
        }
        MSeries uk(d, N);
        for (const auto& [e, c] : q[k].terms()) {
            if (e[k] == 0) {
                throw std::domain_error("invert_diagonal: q_" + std::to_string(k + 1) +
                                        " is not divisible by z_" + std::to_string(k + 1));
            }
            IndexVec f = e;
            --f[k];
            uk.set(f, c);
        }
        if (uk.constant_term() != 1) {
            throw std::domain_error("invert_diagonal: q_" + std::to_string(k + 1) + " must start with z_" +
                                    std::to_string(k + 1));
        }
        u.push_back(std::move(uk));
    }
    std::vector<MSeries> z;
    for (std::size_t k = 0; k < d; ++k) {
        z.push_back(MSeries::variable(d, N, k));
    }
    for (std::int64_t it = 0; it < N; ++it) {
        std::vector<MSeries> next;
        for (std::size_t k = 0; k < d; ++k) {
            next.push_back(MSeries::variable(d, N, k) * reciprocal(substitute(u[k], z)));
        }
        z = std::move(next);
    }
    return z;
}

/// A(z) + log(z) B(z), univariate.
struct LogSeries
{
    MSeries regular;
    MSeries logpart;

    LogSeries(MSeries a, MSeries b) : regular(std::move(a)), logpart(std::move(b))
    {
        if (regular.dim() != 1 || logpart.dim() != 1) {
            throw std::invalid_argument("LogSeries: parts must be univariate");
        }
        regular.check_compatible(logpart);
    }

    std::int64_t order() const { return regular.order(); }

    friend bool operator==(const LogSeries& a, const LogSeries& b)
    {
        return a.regular == b.regular && a.logpart == b.logpart;
    }
};

inline MSeries theta(const MSeries& a)
{
    MSeries out(a.dim(), a.order());
    for (const auto& [e, c] : a.terms()) {
        out.set(e, c * static_cast<long>(total_degree(e)));
    }
    return out;
}

/// theta(A + B log z) = theta A + B + (theta B) log z
inline LogSeries theta(const LogSeries& a)
{
    return {theta(a.regular) + a.logpart, theta(a.logpart)};
}

inline MSeries shift_up(const MSeries& a, std::int64_t i)
{
    MSeries out(a.dim(), a.order());
    for (const auto& [e, c] : a.terms()) {
        out.set({e[0] + i}, c);
    }
    return out;
}

/// sum_i z^i P_i(theta) applied to a; P[i][j] is the coefficient of theta^j in P_i.
inline LogSeries apply_theta_poly(const std::vector<std::vector<Integer>>& P, const LogSeries& a)
{
    const std::int64_t N = a.order();
    LogSeries out{MSeries(1, N), MSeries(1, N)};
    std::vector<LogSeries> powers{a};
    for (std::size_t i = 0; i < P.size(); ++i) {
        LogSeries term{MSeries(1, N), MSeries(1, N)};
        for (std::size_t j = 0; j < P[i].size(); ++j) {
            while (powers.size() <= j) {
                powers.push_back(theta(powers.back()));
            }
            if (P[i][j] == 0) {
                continue;
            }
            const QRational c{P[i][j]};
            term.regular += powers[j].regular * c;
            term.logpart += powers[j].logpart * c;
        }
        out.regular += shift_up(term.regular, static_cast<std::int64_t>(i));
        out.logpart += shift_up(term.logpart, static_cast<std::int64_t>(i));
    }
    return out;
}

} // namespace mirrorint
