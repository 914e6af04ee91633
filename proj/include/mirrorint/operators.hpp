#pragma once

// Differential operators in theta-form and formal annihilation checks.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forms.hpp"
#include "landau.hpp"
#include "mirror.hpp"
#include "series.hpp"

namespace mirrorint {

/// Integer polynomial, ascending coefficients.
using IntPoly = std::vector<Integer>;

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    IntPoly r(a.size() + b.size() - 1, Integer{0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline IntPoly poly_scale(IntPoly a, const Integer& c)
{
    for (auto& v : a) {
        v *= c;
    }
    return a;
}

inline Integer poly_eval(const IntPoly& a, const Integer& x)
{
    Integer r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        r = r * x + *it;
    }
    return r;
}

/// sum_i z^i P_i(theta)
struct ThetaOperator
{
    std::vector<IntPoly> P;

    /// Highest power of z.
    std::int64_t z_degree() const { return P.empty() ? 0 : static_cast<std::int64_t>(P.size()) - 1; }

    friend bool operator==(const ThetaOperator&, const ThetaOperator&) = default;
};

/// theta^4 - 2^4 z (4t+1)(4t+3)(8t^2+8t+3) + 2^12 z^2 (4t+1)(4t+3)(4t+5)(4t+7)
inline ThetaOperator case30_operator()
{
    const IntPoly t4{0, 0, 0, 0, 1};
    const IntPoly l1 = poly_mul(IntPoly{1, 4}, IntPoly{3, 4});
    const IntPoly p1 = poly_scale(poly_mul(l1, IntPoly{3, 8, 8}), -16);
    const IntPoly p2 = poly_scale(poly_mul(l1, poly_mul(IntPoly{5, 4}, IntPoly{7, 4})), 4096);
    return {{t4, p1, p2}};
}

/// Applies the operator; the result is kept to order N - v.
inline LogSeries apply_operator(const ThetaOperator& op, const LogSeries& s)
{
    LogSeries full = apply_theta_poly(op.P, s);
    const std::int64_t keep = std::max<std::int64_t>(s.order() - op.z_degree(), 0);
    return {full.regular.truncated(keep), full.logpart.truncated(keep)};
}

struct Specialization
{
    std::vector<std::int64_t> M;
    std::vector<std::int64_t> N;
    std::size_t k = 1;
};

using ClosedForm = std::function<Integer(std::int64_t)>;

/// (4n)!/((n!)^2 (2n)!) sum_k 4^k C(2(n-k),n-k)^2 C(2k,k)
inline Integer case30_closed_form(std::int64_t n)
{
    Integer inner = 0;
    for (std::int64_t k = 0; k <= n; ++k) {
        const Integer c = binomial(2 * (n - k), n - k);
        inner += ipow(4, static_cast<std::uint64_t>(k)) * c * c * binomial(2 * k, k);
    }
    const Integer fn = factorial(n);
    Integer lead = factorial(4 * n) / (fn * fn * factorial(2 * n));
    return lead * inner;
}

/// Registered closed-form evaluators, keyed by "builtin:<id>".
inline const std::map<std::string, ClosedForm>& closed_form_registry()
{
    static const std::map<std::string, ClosedForm> registry{
        {"builtin:case30", case30_closed_form},
        {"builtin:one", [](std::int64_t n) { return Integer{n == 0 ? 1 : 0}; }},
    };
    return registry;
}

inline const ClosedForm& lookup_closed_form(const std::string& id)
{
    const auto& reg = closed_form_registry();
    auto it = reg.find(id);
    if (it == reg.end()) {
        throw std::invalid_argument("unknown closed form: " + id);
    }
    return it->second;
}

struct CaseRecord
{
    std::string name;
    ThetaOperator op;
    FormSystem sys;
    Specialization special;
    std::string closed_form;
};

inline FormSystem case30_system()
{
    return FormSystem(2, {{4, 4}, {2, 0}, {2, 0}, {0, 2}},
                      {{2, 2}, {1, 1}, {1, 1}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}});
}

inline CaseRecord case30_record()
{
    return {"case30", case30_operator(), case30_system(), {{1, 4}, {1, 1}, 1}, "builtin:case30"};
}

struct AnnihilationCheck
{
    std::string name;
    bool pass = true;
    std::optional<std::int64_t> first_failing_order;
    std::string detail;
};

struct AnnihilationReport
{
    std::string name;
    std::int64_t order = 0;
    std::vector<AnnihilationCheck> checks;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const AnnihilationCheck& c) { return c.pass; });
    }
};

namespace detail {

inline std::optional<std::int64_t> lowest_degree(const MSeries& s)
{
    if (s.is_zero()) {
        return std::nullopt;
    }
    return s.valuation();
}

} // namespace detail

/// The four checks on already-specialized series: closed form, L F = 0,
/// L (G + log z F) = 0, and integrality of z exp(G/F).
inline AnnihilationReport verify_annihilation_series(const std::string& name, const ThetaOperator& op,
                                                     const MSeries& F, const MSeries& G,
                                                     const std::optional<ClosedForm>& closed)
{
    const std::int64_t N = F.order();
    AnnihilationReport rep{name, N, {}};

    AnnihilationCheck cf{"closed_form", true, std::nullopt, "no closed form registered"};
    if (closed) {
        cf.detail = "coefficients n <= " + std::to_string(N);
        for (std::int64_t n = 0; n <= N; ++n) {
            if (F.coeff({n}) != QRational{(*closed)(n)}) {
                cf.pass = false;
                cf.first_failing_order = n;
                cf.detail = "F_spec[" + std::to_string(n) + "] = " + F.coeff({n}).get_str() +
                            ", closed form = " + (*closed)(n).get_str();
                break;
            }
        }
    }
    rep.checks.push_back(cf);

    const LogSeries LF = apply_operator(op, LogSeries{F, MSeries(1, N)});
    AnnihilationCheck a1{"annihilates_F", true, std::nullopt,
                         "to order " + std::to_string(std::max<std::int64_t>(N - op.z_degree(), 0))};
    if (auto f = detail::lowest_degree(LF.regular)) {
        a1.pass = false;
        a1.first_failing_order = f;
    }
    rep.checks.push_back(a1);

    const LogSeries LG = apply_operator(op, LogSeries{G, F});
    AnnihilationCheck a2{"annihilates_G_plus_logF", true, std::nullopt, a1.detail};
    std::optional<std::int64_t> bad;
    for (const auto* s : {&LG.regular, &LG.logpart}) {
        if (auto f = detail::lowest_degree(*s); f && (!bad || *f < *bad)) {
            bad = f;
        }
    }
    if (bad) {
        a2.pass = false;
        a2.first_failing_order = bad;
    }
    rep.checks.push_back(a2);

    AnnihilationCheck qi{"q_integral", true, std::nullopt, "to order " + std::to_string(N)};
    if (F.constant_term() != 1 || G.constant_term() != 0) {
        qi.pass = false;
        qi.detail = "F must start with 1 and G with 0";
    } else {
        const MSeries q = canonical_coordinate(F, G, 1);
        if (auto f = first_violation_degree(q)) {
            qi.pass = false;
            qi.first_failing_order = f;
        }
    }
    rep.checks.push_back(qi);
    return rep;
}

/// F_spec and G_spec of a record at order N.
inline std::pair<MSeries, MSeries> specialized_series(const CaseRecord& rec, std::int64_t N)
{
    const auto& sp = rec.special;
    if (sp.k < 1 || sp.k > rec.sys.dim()) {
        throw std::invalid_argument("case record: k out of range");
    }
    return {specialize(build_F(rec.sys, N), sp.M, sp.N), specialize(build_Gk(rec.sys, sp.k, N), sp.M, sp.N)};
}

inline AnnihilationReport verify_annihilation(const CaseRecord& rec, std::int64_t N)
{
    auto [F, G] = specialized_series(rec, N);
    std::optional<ClosedForm> cf;
    if (!rec.closed_form.empty()) {
        cf = lookup_closed_form(rec.closed_form);
    }
    return verify_annihilation_series(rec.name, rec.op, F, G, cf);
}

inline CriterionVerdict case30_landau_check(const ClassifyOptions& opt = {})
{
    return classify(case30_system(), opt);
}

} // namespace mirrorint
