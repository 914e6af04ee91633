#pragma once

// Exact arithmetic kernel: big rationals, harmonic numbers, factorial ratios
// of linear forms and p-adic valuations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mirrorint {

using Integer = mpz_class;
using QRational = mpq_class;

/// Multi-index in N^d (also used for exponent vectors and form vectors).
using IndexVec = std::vector<std::int64_t>;

inline std::int64_t dot(std::span<const std::int64_t> c, std::span<const std::int64_t> n)
{
    if (c.size() != n.size()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += c[i] * n[i];
    }
    return s;
}

inline std::int64_t total_degree(std::span<const std::int64_t> n)
{
    return std::accumulate(n.begin(), n.end(), std::int64_t{0});
}

/// Componentwise partial order: m >= n.
inline bool dominates(std::span<const std::int64_t> m, std::span<const std::int64_t> n)
{
    if (m.size() != n.size()) {
        throw std::invalid_argument("dominates: dimension mismatch");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < n[i]) {
            return false;
        }
    }
    return true;
}

inline bool is_zero(std::span<const std::int64_t> n)
{
    return std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v == 0; });
}

inline std::string to_string(std::span<const std::int64_t> n)
{
    std::string s = "(";
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(n[i]);
    }
    return s + ")";
}

inline bool is_prime(std::uint64_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::uint64_t q = 2; q * q <= p; ++q) {
        if (p % q == 0) {
            return false;
        }
    }
    return true;
}

inline void require_prime(std::uint64_t p)
{
    if (!is_prime(p)) {
        throw std::invalid_argument("not a prime: " + std::to_string(p));
    }
}

/// p-adic valuation, with a distinct +infinity for the valuation of zero.
class Valuation
{
public:
    constexpr Valuation(long v) noexcept : value_(v) {}

    static constexpr Valuation infinity() noexcept
    {
        Valuation v{0};
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }

    long value() const
    {
        if (infinite_) {
            throw std::domain_error("valuation of zero is infinite");
        }
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) noexcept
    {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) noexcept
    {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ <=> b.infinite_;
        }
        return a.value_ <=> b.value_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) noexcept
    {
        if (a.infinite_ || b.infinite_) {
            return infinity();
        }
        return Valuation{a.value_ + b.value_};
    }

    std::string str() const { return infinite_ ? std::string("inf") : std::to_string(value_); }

private:
    long value_ = 0;
    bool infinite_ = false;
};

inline Valuation vp(const Integer& x, std::uint64_t p)
{
    if (x == 0) {
        return Valuation::infinity();
    }
    Integer rest;
    Integer prime{static_cast<unsigned long>(p)};
    return Valuation{static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()))};
}

/// v_p(numerator) - v_p(denominator); +infinity for zero.
inline Valuation vp_of_rational(const QRational& x, std::uint64_t p)
{
    require_prime(p);
    if (x == 0) {
        return Valuation::infinity();
    }
    return Valuation{vp(x.get_num(), p).value() - vp(x.get_den(), p).value()};
}

/// num/den in canonical form.
inline QRational frac(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw std::domain_error("frac: zero denominator");
    }
    QRational r{Integer{static_cast<long>(num)}, Integer{static_cast<long>(den)}};
    r.canonicalize();
    return r;
}

inline Integer ipow(std::uint64_t base, std::uint64_t exp)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline Integer factorial(std::int64_t n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative integer");
    }
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// H_m = 1 + 1/2 + ... + 1/m, memoized per thread.
inline QRational harmonic(std::int64_t m)
{
    if (m < 0) {
        throw std::domain_error("harmonic: negative index");
    }
    thread_local std::vector<QRational> table{QRational{0}};
    while (static_cast<std::int64_t>(table.size()) <= m) {
        const auto i = static_cast<long>(table.size());
        QRational next = table.back() + QRational{1, static_cast<unsigned long>(i)};
        next.canonicalize();
        table.push_back(std::move(next));
    }
    return table[static_cast<std::size_t>(m)];
}

/// A pair of sequences e, f of vectors in N^d.
///
/// The default constructor enforces the standing hypotheses (nonzero vectors,
/// e and f disjoint as multisets, e nonempty). Raw systems skip those checks
/// and are used for Landau-(ii) fixtures and jump-profile preprocessing.
class FormSystem
{
public:
    struct RawTag {};
    static constexpr RawTag raw{};

    FormSystem(std::size_t d, std::vector<IndexVec> e, std::vector<IndexVec> f)
        : FormSystem(raw, d, std::move(e), std::move(f))
    {
        raw_ = false;
        if (e_.empty()) {
            throw std::invalid_argument("FormSystem: e must be nonempty");
        }
        for (const auto& c : forms()) {
            if (is_zero(c)) {
                throw std::invalid_argument("FormSystem: zero vector " + to_string(c));
            }
        }
        for (const auto& c : e_) {
            if (std::find(f_.begin(), f_.end(), c) != f_.end()) {
                throw std::invalid_argument("FormSystem: e and f share the vector " + to_string(c));
            }
        }
    }

    FormSystem(RawTag, std::size_t d, std::vector<IndexVec> e, std::vector<IndexVec> f)
        : d_(d), e_(std::move(e)), f_(std::move(f)), sum_e_(d, 0), sum_f_(d, 0), raw_(true)
    {
        if (d == 0) {
            throw std::invalid_argument("FormSystem: dimension must be positive");
        }
        auto check = [&](const IndexVec& c) {
            if (c.size() != d) {
                throw std::invalid_argument("FormSystem: vector " + to_string(c) + " has wrong dimension");
            }
            if (std::any_of(c.begin(), c.end(), [](std::int64_t v) { return v < 0; })) {
                throw std::invalid_argument("FormSystem: negative entry in " + to_string(c));
            }
        };
        for (const auto& c : e_) {
            check(c);
            for (std::size_t k = 0; k < d; ++k) {
                sum_e_[k] += c[k];
            }
        }
        for (const auto& c : f_) {
            check(c);
            for (std::size_t k = 0; k < d; ++k) {
                sum_f_[k] += c[k];
            }
        }
    }

    std::size_t dim() const noexcept { return d_; }
    const std::vector<IndexVec>& e() const noexcept { return e_; }
    const std::vector<IndexVec>& f() const noexcept { return f_; }
    const IndexVec& sum_e() const noexcept { return sum_e_; }
    const IndexVec& sum_f() const noexcept { return sum_f_; }
    bool is_raw() const noexcept { return raw_; }
    bool balanced() const noexcept { return sum_e_ == sum_f_; }

    /// e followed by f.
    std::vector<IndexVec> forms() const
    {
        std::vector<IndexVec> all = e_;
        all.insert(all.end(), f_.begin(), f_.end());
        return all;
    }

    std::int64_t max_coefficient_sum() const
    {
        std::int64_t best = 0;
        for (const auto& c : forms()) {
            best = std::max(best, total_degree(c));
        }
        return best;
    }

    void check_dim(std::span<const std::int64_t> n) const
    {
        if (n.size() != d_) {
            throw std::invalid_argument("dimension mismatch: expected " + std::to_string(d_) + ", got " +
                                        std::to_string(n.size()));
        }
    }

    friend bool operator==(const FormSystem& a, const FormSystem& b)
    {
        return a.d_ == b.d_ && a.e_ == b.e_ && a.f_ == b.f_ && a.raw_ == b.raw_;
    }

private:
    std::size_t d_;
    std::vector<IndexVec> e_;
    std::vector<IndexVec> f_;
    IndexVec sum_e_;
    IndexVec sum_f_;
    bool raw_;
};

/// Q_{e,f}(n) = prod (e_i.n)! / prod (f_j.n)!
inline QRational factorial_ratio(const FormSystem& sys, std::span<const std::int64_t> n)
{
    sys.check_dim(n);
    for (auto v : n) {
        if (v < 0) {
            throw std::domain_error("factorial_ratio: negative index " + to_string(n));
        }
    }
    Integer num = 1;
    Integer den = 1;
    for (const auto& c : sys.e()) {
        num *= factorial(dot(c, n));
    }
    for (const auto& c : sys.f()) {
        den *= factorial(dot(c, n));
    }
    QRational r{num, den};
    r.canonicalize();
    return r;
}

/// Q extended by zero to Z^d (any negative coordinate gives 0).
inline QRational factorial_ratio_ext(const FormSystem& sys, std::span<const std::int64_t> n)
{
    if (std::any_of(n.begin(), n.end(), [](std::int64_t v) { return v < 0; })) {
        return 0;
    }
    return factorial_ratio(sys, n);
}

/// Legendre's sum v_p(m!) = sum_l floor(m / p^l).
inline std::int64_t vp_factorial(std::int64_t m, std::uint64_t p)
{
    std::int64_t total = 0;
    const auto pp = static_cast<std::int64_t>(p);
    for (std::int64_t q = m / pp; q > 0; q /= pp) {
        total += q;
    }
    return total;
}

/// v_p(Q_{e,f}(n)) from Legendre sums over the form values; no big numbers.
inline std::int64_t vp_ratio_legendre(const FormSystem& sys, std::span<const std::int64_t> n, std::uint64_t p)
{
    require_prime(p);
    sys.check_dim(n);
    std::int64_t v = 0;
    for (const auto& c : sys.e()) {
        v += vp_factorial(dot(c, n), p);
    }
    for (const auto& c : sys.f()) {
        v -= vp_factorial(dot(c, n), p);
    }
    return v;
}

/// Memo of factorials and Q-values for sweeps that revisit the same indices.
class RatioCache
{
public:
    explicit RatioCache(const FormSystem& sys) : sys_(sys) {}

    const Integer& fact(std::int64_t m)
    {
        if (m < 0) {
            throw std::domain_error("factorial of a negative integer");
        }
        if (facts_.empty()) {
            facts_.emplace_back(1);
        }
        while (static_cast<std::int64_t>(facts_.size()) <= m) {
            facts_.push_back(facts_.back() * static_cast<unsigned long>(facts_.size()));
        }
        return facts_[static_cast<std::size_t>(m)];
    }

    /// Q(n), zero-extended to negative indices.
    QRational operator()(std::span<const std::int64_t> n)
    {
        if (std::any_of(n.begin(), n.end(), [](std::int64_t v) { return v < 0; })) {
            return 0;
        }
        sys_.check_dim(n);
        Integer num = 1;
        Integer den = 1;
        for (const auto& c : sys_.e()) {
            num *= fact(dot(c, n));
        }
        for (const auto& c : sys_.f()) {
            den *= fact(dot(c, n));
        }
        QRational r{num, den};
        r.canonicalize();
        return r;
    }

    const FormSystem& system() const noexcept { return sys_; }

private:
    const FormSystem& sys_;
    std::vector<Integer> facts_;
};

} // namespace mirrorint
