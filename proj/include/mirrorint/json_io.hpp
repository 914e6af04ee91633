#pragma once

// JSON serialization of the library types. Series use a canonical form
// (terms sorted lexicographically by exponent, decimal strings) so that
// equal series serialize to identical bytes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dwork.hpp"
#include "forms.hpp"
#include "landau.hpp"
#include "mirror.hpp"
#include "operators.hpp"
#include "series.hpp"

namespace mirrorint::json {

using nlohmann::json;

class SchemaError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw SchemaError(what);
    }
}

/// Rejects keys outside `allowed`.
inline void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where)
{
    require(j.is_object(), where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        require(std::find(allowed.begin(), allowed.end(), key) != allowed.end(),
                where + ": unknown key \"" + key + "\"");
    }
}

inline std::string rational_string(const QRational& q) { return q.get_str(); }

inline QRational parse_rational(const json& j, const std::string& where)
{
    if (j.is_number_integer()) {
        return QRational{static_cast<long>(j.get<std::int64_t>())};
    }
    require(j.is_string(), where + ": expected an integer or a rational string");
    QRational q;
    require(q.set_str(j.get<std::string>(), 10) == 0, where + ": malformed rational \"" + j.get<std::string>() + "\"");
    require(q.get_den() != 0, where + ": zero denominator");
    q.canonicalize();
    return q;
}

inline json point_json(const RationalPoint& x)
{
    json a = json::array();
    for (const auto& v : x) {
        a.push_back(rational_string(v));
    }
    return a;
}

inline IndexVec parse_index(const json& j, const std::string& where, bool allow_negative = false)
{
    require(j.is_array(), where + ": expected an array of integers");
    IndexVec v;
    for (const auto& x : j) {
        require(x.is_number_integer(), where + ": expected integer entries");
        v.push_back(x.get<std::int64_t>());
        require(allow_negative || v.back() >= 0, where + ": negative entry");
    }
    return v;
}

// ---------------------------------------------------------------------------
// series

inline json series_json(const MSeries& s)
{
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) {
        terms.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    }
    return {{"d", s.dim()}, {"order", s.order()}, {"terms", terms}};
}

inline MSeries parse_series(const json& j, const std::string& where = "series")
{
    check_keys(j, {"d", "order", "terms"}, where);
    require(j.contains("d") && j["d"].is_number_integer() && j["d"].get<std::int64_t>() >= 1,
            where + ": \"d\" must be a positive integer");
    require(j.contains("order") && j["order"].is_number_integer() && j["order"].get<std::int64_t>() >= 0,
            where + ": \"order\" must be a nonnegative integer");
    require(j.contains("terms") && j["terms"].is_array(), where + ": \"terms\" must be an array");
    const auto d = j["d"].get<std::size_t>();
    MSeries s(d, j["order"].get<std::int64_t>());
    for (const auto& t : j["terms"]) {
        check_keys(t, {"exp", "num", "den"}, where + ".terms");
        require(t.contains("exp") && t.contains("num") && t.contains("den"), where + ": term needs exp, num, den");
        const IndexVec e = parse_index(t["exp"], where + ".exp");
        require(e.size() == d, where + ": exponent of wrong length");
        require(t["num"].is_string() && t["den"].is_string(), where + ": num/den must be decimal strings");
        Integer num;
        Integer den;
        require(num.set_str(t["num"].get<std::string>(), 10) == 0, where + ": malformed numerator");
        require(den.set_str(t["den"].get<std::string>(), 10) == 0 && den > 0, where + ": malformed denominator");
        QRational c{num, den};
        c.canonicalize();
        s.set(e, c);
    }
    return s;
}

// ---------------------------------------------------------------------------
// systems

inline json system_json(const FormSystem& sys)
{
    json j{{"d", sys.dim()}, {"e", sys.e()}, {"f", sys.f()}};
    if (sys.is_raw()) {
        j["raw"] = true;
    }
    return j;
}

inline FormSystem parse_system(const json& j, const std::string& where = "system")
{
    check_keys(j, {"d", "e", "f", "raw"}, where);
    require(j.contains("d") && j["d"].is_number_integer() && j["d"].get<std::int64_t>() >= 1,
            where + ": \"d\" must be a positive integer");
    require(j.contains("e") && j["e"].is_array(), where + ": \"e\" must be an array of vectors");
    require(j.contains("f") && j["f"].is_array(), where + ": \"f\" must be an array of vectors");
    bool raw = false;
    if (j.contains("raw")) {
        require(j["raw"].is_boolean(), where + ": \"raw\" must be a boolean");
        raw = j["raw"].get<bool>();
    }
    const auto d = j["d"].get<std::size_t>();
    std::vector<IndexVec> e;
    std::vector<IndexVec> f;
    for (const auto& c : j["e"]) {
        e.push_back(parse_index(c, where + ".e"));
    }
    for (const auto& c : j["f"]) {
        f.push_back(parse_index(c, where + ".f"));
    }
    try {
        if (raw) {
            return FormSystem(FormSystem::raw, d, e, f);
        }
        return FormSystem(d, e, f);
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(where + ": " + ex.what());
    }
}

// ---------------------------------------------------------------------------
// reports

inline json verdict_json(const CriterionVerdict& v, bool with_certificate = true)
{
    json j{{"verdict", to_string(v.tag)},
           {"strategy", to_string(v.strategy)},
           {"candidates", v.candidates},
           {"sampled", v.sampled},
           {"budget_exceeded", v.budget_exceeded}};
    j["witness"] = v.witness ? point_json(*v.witness) : json(nullptr);
    j["k"] = v.coordinate ? json(*v.coordinate) : json(nullptr);
    j["cross_checked_with"] = v.cross_checked_with ? json(to_string(*v.cross_checked_with)) : json(nullptr);
    j["certificate_size"] = v.certificate.size();
    if (with_certificate) {
        json cert = json::array();
        for (const auto& c : v.certificate) {
            cert.push_back({{"x", point_json(c.x)}, {"delta", c.delta}});
        }
        j["certificate"] = cert;
    }
    return j;
}

inline json valuation_json(const Valuation& v)
{
    return v.is_infinite() ? json("inf") : json(v.value());
}

inline json locus_json(const Locus& locus)
{
    json j = json::object();
    for (const auto& item : locus) {
        j[item.key] = item.scalar ? json(item.value.at(0)) : json(item.value);
    }
    return j;
}

inline json report_json(const CongruenceReport& r)
{
    return {{"check", r.check},
            {"locus", locus_json(r.locus)},
            {"required", r.required},
            {"achieved", valuation_json(r.achieved)},
            {"pass", r.pass}};
}

inline json scan_json(const std::string& name, const ScanReport& r)
{
    json viol = json::array();
    for (const auto& v : r.violations) {
        json x{{"exp", v.exponent}, {"num", v.coefficient.get_num().get_str()},
               {"den", v.coefficient.get_den().get_str()}};
        if (v.valuation) {
            x["vp"] = valuation_json(*v.valuation);
        }
        viol.push_back(x);
    }
    return {{"scan", name},
            {"prime", r.prime ? json(*r.prime) : json(nullptr)},
            {"order", r.order},
            {"integral", r.integral()},
            {"truncated", r.truncated},
            {"violations", viol}};
}

inline json annihilation_json(const AnnihilationReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"check", c.name},
                          {"pass", c.pass},
                          {"first_failing_order", c.first_failing_order ? json(*c.first_failing_order) : json(nullptr)},
                          {"detail", c.detail}});
    }
    return {{"case", r.name}, {"order", r.order}, {"pass", r.pass()}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// case records

inline json case_json(const CaseRecord& rec)
{
    json op = json::array();
    for (const auto& P : rec.op.P) {
        json coeffs = json::array();
        for (const auto& c : P) {
            coeffs.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
        }
        op.push_back(coeffs);
    }
    return {{"name", rec.name},
            {"theta_op", op},
            {"system", system_json(rec.sys)},
            {"special", {{"M", rec.special.M}, {"N", rec.special.N}, {"k", rec.special.k}}},
            {"closed_form", rec.closed_form}};
}

inline CaseRecord parse_case(const json& j, const std::string& where = "case")
{
    check_keys(j, {"name", "theta_op", "system", "special", "closed_form"}, where);
    require(j.contains("name") && j["name"].is_string(), where + ": \"name\" must be a string");
    require(j.contains("theta_op") && j["theta_op"].is_array() && !j["theta_op"].empty(),
            where + ": \"theta_op\" must be a nonempty array of coefficient lists");
    require(j.contains("system"), where + ": missing \"system\"");
    require(j.contains("special"), where + ": missing \"special\"");
    ThetaOperator op;
    for (const auto& P : j["theta_op"]) {
        require(P.is_array(), where + ".theta_op: expected coefficient lists");
        IntPoly poly;
        for (const auto& c : P) {
            if (c.is_number_integer()) {
                poly.emplace_back(static_cast<long>(c.get<std::int64_t>()));
            } else {
                require(c.is_string(), where + ".theta_op: coefficients must be integers");
                Integer v;
                require(v.set_str(c.get<std::string>(), 10) == 0, where + ".theta_op: malformed integer");
                poly.push_back(v);
            }
        }
        op.P.push_back(poly);
    }
    const FormSystem sys = parse_system(j["system"], where + ".system");
    const json& sp = j["special"];
    check_keys(sp, {"M", "N", "k"}, where + ".special");
    require(sp.contains("M") && sp.contains("N"), where + ".special: needs M and N");
    Specialization special{parse_index(sp["M"], where + ".special.M", true), parse_index(sp["N"], where + ".special.N"),
                           1};
    if (sp.contains("k")) {
        require(sp["k"].is_number_integer(), where + ".special.k must be an integer");
        special.k = sp["k"].get<std::size_t>();
    }
    require(special.M.size() == sys.dim() && special.N.size() == sys.dim(),
            where + ".special: M and N must have length d");
    require(special.k >= 1 && special.k <= sys.dim(), where + ".special: k out of range");
    std::string cf;
    if (j.contains("closed_form")) {
        require(j["closed_form"].is_string(), where + ": \"closed_form\" must be a string");
        cf = j["closed_form"].get<std::string>();
        require(closed_form_registry().count(cf) == 1, where + ": unknown closed form \"" + cf + "\"");
    }
    return {j["name"].get<std::string>(), op, sys, special, cf};
}


// ---------------------------------------------------------------------------
// jobs

struct SeriesPair
{
    MSeries F;
    MSeries G;
};

struct JobSpec
{
    std::optional<std::string> name;
    std::optional<FormSystem> system;
    std::optional<std::int64_t> order;
    std::vector<std::uint64_t> primes;
    std::vector<std::string> commands;
    std::optional<Strategy> strategy;
    std::optional<std::uint64_t> budget;
    std::optional<std::int64_t> grid_multiplier;
    std::optional<std::string> cache_dir;
    std::optional<SeriesPair> series;
    std::optional<CaseRecord> case_record;
    std::optional<std::string> case_name;
    std::optional<Theorem4Ranges> theorem4;
};

inline const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> names{"classify", "bundle", "scan", "dwork", "theorem4", "case"};
    return names;
}

inline std::int64_t parse_nonneg(const json& j, const std::string& where)
{
    require(j.is_number_integer() && j.get<std::int64_t>() >= 0, where + ": expected a nonnegative integer");
    return j.get<std::int64_t>();
}

inline JobSpec parse_job(const json& j)
{
    check_keys(j, {"system", "name", "order", "primes", "commands", "strategy", "budget", "cache_dir", "series",
                   "case", "theorem4", "grid_multiplier"},
               "job");
    JobSpec job;
    if (j.contains("name")) {
        require(j["name"].is_string(), "job.name: expected a string");
        job.name = j["name"].get<std::string>();
    }
    if (j.contains("system")) {
        job.system = parse_system(j["system"], "job.system");
    }
    if (j.contains("order")) {
        job.order = parse_nonneg(j["order"], "job.order");
    }
    if (j.contains("primes")) {
        require(j["primes"].is_array(), "job.primes: expected an array");
        for (const auto& p : j["primes"]) {
            const auto v = static_cast<std::uint64_t>(parse_nonneg(p, "job.primes"));
            require(is_prime(v), "job.primes: " + std::to_string(v) + " is not prime");
            job.primes.push_back(v);
        }
    }
    if (j.contains("commands")) {
        require(j["commands"].is_array(), "job.commands: expected an array");
        for (const auto& c : j["commands"]) {
            require(c.is_string(), "job.commands: expected strings");
            const auto name = c.get<std::string>();
            const auto& known = known_commands();
            require(std::find(known.begin(), known.end(), name) != known.end(),
                    "job.commands: unknown command \"" + name + "\"");
            job.commands.push_back(name);
        }
    }
    if (j.contains("strategy")) {
        require(j["strategy"].is_string(), "job.strategy: expected a string");
        try {
            job.strategy = parse_strategy(j["strategy"].get<std::string>());
        } catch (const std::invalid_argument& ex) {
            throw SchemaError(std::string("job.strategy: ") + ex.what());
        }
    }
    if (j.contains("budget")) {
        job.budget = static_cast<std::uint64_t>(parse_nonneg(j["budget"], "job.budget"));
    }
    if (j.contains("grid_multiplier")) {
        job.grid_multiplier = parse_nonneg(j["grid_multiplier"], "job.grid_multiplier");
        require(*job.grid_multiplier >= 1, "job.grid_multiplier: must be at least 1");
    }
    if (j.contains("cache_dir")) {
        require(j["cache_dir"].is_string(), "job.cache_dir: expected a string");
        job.cache_dir = j["cache_dir"].get<std::string>();
    }
    if (j.contains("series")) {
        const json& s = j["series"];
        check_keys(s, {"F", "G"}, "job.series");
        require(s.contains("F") && s.contains("G"), "job.series: needs F and G");
        SeriesPair pair{parse_series(s["F"], "job.series.F"), parse_series(s["G"], "job.series.G")};
        require(pair.F.dim() == pair.G.dim() && pair.F.order() == pair.G.order(),
                "job.series: F and G must share dimension and order");
        job.series = std::move(pair);
    }
    if (j.contains("case")) {
        if (j["case"].is_string()) {
            job.case_name = j["case"].get<std::string>();
        } else {
            job.case_record = parse_case(j["case"], "job.case");
        }
    }
    if (j.contains("theorem4")) {
        const json& t = j["theorem4"];
        check_keys(t, {"s_max", "K_max", "m_max", "ii_max"}, "job.theorem4");
        Theorem4Ranges r;
        r.s_max = t.contains("s_max") ? parse_nonneg(t["s_max"], "job.theorem4.s_max") : -1;
        r.K_max = t.contains("K_max") ? parse_nonneg(t["K_max"], "job.theorem4.K_max") : -1;
        r.m_max = t.contains("m_max") ? parse_nonneg(t["m_max"], "job.theorem4.m_max") : -1;
        r.ii_max = t.contains("ii_max") ? parse_nonneg(t["ii_max"], "job.theorem4.ii_max") : -1;
        job.theorem4 = r; // -1 marks "use the per-prime default"
    }
    require(!(job.system && job.name), "job: give either \"system\" or \"name\", not both");
    return job;
}

} // namespace mirrorint::json
