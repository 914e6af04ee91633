// mirrorint: command-line driver.
//
//   mirrorint <command> [job.json | bundled-name | -] [flags]
//
// Reports go to stdout as JSON lines; a human summary goes to stderr.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mirrorint/mirrorint.hpp>

#include "series_cache.hpp"

namespace {

using namespace mirrorint;
namespace fs = std::filesystem;

enum Exit : int {
    Ok = 0,
    Failed = 1,
    BadInput = 2,
    CacheBroken = 3,
    CaseII = 10,
    NotNonnegative = 11,
    EStrictlyBigger = 12,
    Uncertified = 20,
};

struct Flags
{
    std::string input;
    std::optional<std::int64_t> order;
    std::vector<std::uint64_t> primes;
    std::optional<std::string> strategy;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    bool rebuild_cache = false;
    bool all_reports = false;
};

/// A job after flags, environment and bundled defaults are applied.
struct Job
{
    json::JobSpec spec;
    std::string label;
    std::optional<FormSystem> sys;
    std::int64_t order = 0;
    ClassifyOptions classify;
    std::optional<fs::path> cache;
    bool rebuild_cache = false;
    bool all_reports = false;
    std::optional<nlohmann::json> raw_case; // a case record given as the positional input
};

void emit(const nlohmann::json& line) { std::cout << line.dump() << '\n'; }

nlohmann::json exp_z_fixture()
{
    // F = 1 and G = z: exp(G/F) = e^z is not 2-integral
    const std::int64_t N = 12;
    return {{"name", "exp_z"},
            {"series",
             {{"F", json::series_json(MSeries::one(1, N))}, {"G", json::series_json(MSeries::variable(1, N, 0))}}},
            {"primes", {2}}};
}

nlohmann::json read_input(const std::string& input)
{
    if (input.empty() || input == "-") {
        return nlohmann::json::parse(std::cin);
    }
    if (fs::exists(input)) {
        return nlohmann::json::parse(cli::read_file(input));
    }
    if (catalog::find(input)) {
        return {{"name", input}};
    }
    if (input == "exp_z") {
        return exp_z_fixture();
    }
    throw json::SchemaError("no job file or bundled example named \"" + input + "\"");
}

Job resolve(const Flags& flags)
{
    nlohmann::json doc = read_input(flags.input);
    Job job;
    if (doc.is_object() && doc.contains("theta_op")) {
        job.raw_case = doc;
        doc = nlohmann::json::object();
    }
    job.spec = json::parse_job(doc);
    const auto& spec = job.spec;

    if (spec.system) {
        job.sys = spec.system;
        job.label = "custom";
    } else if (spec.name) {
        job.label = *spec.name;
        if (auto s = catalog::find(*spec.name)) {
            job.sys = s;
        } else if (!spec.series && *spec.name != "exp_z") {
            throw json::SchemaError("job.name: unknown bundled system \"" + *spec.name + "\"");
        }
    }

    std::size_t d = 1;
    if (job.sys) {
        d = job.sys->dim();
    } else if (spec.series) {
        d = spec.series->F.dim();
    }
    job.order = flags.order.value_or(spec.order.value_or(catalog::default_order(d)));
    if (spec.series && !flags.order && !spec.order) {
        job.order = spec.series->F.order();
    }

    if (!flags.primes.empty()) {
        for (auto p : flags.primes) {
            if (!is_prime(p)) {
                throw json::SchemaError("--prime: " + std::to_string(p) + " is not prime");
            }
        }
        job.spec.primes = flags.primes;
    }

    if (flags.strategy) {
        try {
            job.classify.strategy = parse_strategy(*flags.strategy);
        } catch (const std::invalid_argument& ex) {
            throw json::SchemaError(std::string("--strategy: ") + ex.what());
        }
    } else if (spec.strategy) {
        job.classify.strategy = *spec.strategy;
    }
    job.classify.budget = flags.budget.value_or(spec.budget.value_or(job.classify.budget));
    job.classify.grid_multiplier = spec.grid_multiplier.value_or(job.classify.grid_multiplier);

    if (!flags.no_cache) {
        if (flags.cache_dir) {
            job.cache = *flags.cache_dir;
        } else if (const char* env = std::getenv("MIRRORINT_CACHE"); env && *env) {
            job.cache = env;
        } else if (spec.cache_dir) {
            job.cache = *spec.cache_dir;
        }
    }
    job.rebuild_cache = flags.rebuild_cache;
    job.all_reports = flags.all_reports;
    return job;
}

const FormSystem& need_system(const Job& job, const std::string& cmd)
{
    if (!job.sys) {
        throw json::SchemaError(cmd + ": the job names no form system");
    }
    return *job.sys;
}

// ---------------------------------------------------------------------------

int cmd_classify(const Job& job)
{
    const FormSystem& sys = need_system(job, "classify");
    const CriterionVerdict v = classify(sys, job.classify);
    nlohmann::json line = json::verdict_json(v);
    line["system"] = job.label;
    emit(line);
    std::cerr << "classify " << job.label << ": " << to_string(v.tag);
    if (v.witness) {
        std::cerr << " witness " << to_string(*v.witness);
    }
    if (v.coordinate) {
        std::cerr << " k=" << *v.coordinate;
    }
    std::cerr << " (" << to_string(v.strategy) << ", " << v.candidates << " candidates"
              << (v.sampled ? ", not certified" : "") << ")\n";
    switch (v.tag) {
    case VerdictTag::CaseI:
        return v.sampled ? Uncertified : Ok;
    case VerdictTag::CaseII:
        return CaseII;
    case VerdictTag::NotNonnegative:
        return NotNonnegative;
    case VerdictTag::EStrictlyBigger:
        return EStrictlyBigger;
    }
    return Failed;
}

/// Builds or loads the bundle, honouring the cache settings.
MirrorBundle obtain_bundle(const Job& job, const FormSystem& sys)
{
    if (!job.cache) {
        return build_bundle(sys, job.order);
    }
    cli::SeriesCache cache(*job.cache);
    const std::string key = cli::SeriesCache::key(sys, job.order);
    try {
        if (auto hit = cache.load(key)) {
            std::cerr << "cache hit " << cache.entry(key).string() << '\n';
            return cli::bundle_from_series(sys, job.order, *hit);
        }
    } catch (const cli::CacheCorrupt& ex) {
        if (!job.rebuild_cache) {
            throw;
        }
        std::cerr << "cache corrupt (" << ex.what() << "), rebuilding\n";
        cache.erase(key);
    }
    MirrorBundle b = build_bundle(sys, job.order);
    cache.store(key, cli::bundle_series(b));
    return b;
}

int cmd_bundle(const Job& job)
{
    const FormSystem& sys = need_system(job, "bundle");
    const MirrorBundle b = obtain_bundle(job, sys);
    const RetoucheResult rt = check_retouche(b);
    const bool round_trip = inversion_round_trip(b);
    nlohmann::json E = nlohmann::json::array();
    for (const auto& [L, s] : b.qL) {
        E.push_back(L);
    }
    emit({{"bundle", job.label},
          {"order", b.order},
          {"balanced", b.balanced},
          {"E", E},
          {"retouche", rt.ok},
          {"round_trip", round_trip}});
    for (const auto& [name, s] : cli::bundle_series(b)) {
        emit({{"series", name}, {"value", json::series_json(s)}});
    }
    std::cerr << "bundle " << job.label << " to order " << b.order << ": " << b.qL.size()
              << " maps q_L, retouche " << (rt.ok ? "ok" : "FAILED") << ", round trip "
              << (round_trip ? "ok" : "FAILED") << '\n';
    return rt.ok && round_trip ? Ok : Failed;
}

int cmd_scan(const Job& job)
{
    const FormSystem& sys = need_system(job, "scan");
    const MirrorBundle b = obtain_bundle(job, sys);
    std::vector<std::optional<std::uint64_t>> primes;
    if (job.spec.primes.empty()) {
        primes.push_back(std::nullopt);
    }
    for (auto p : job.spec.primes) {
        primes.push_back(p);
    }
    std::size_t bad = 0;
    std::size_t total = 0;
    for (const auto& [name, s] : cli::bundle_series(b)) {
        if (name[0] != 'q' && name[0] != 'z') {
            continue;
        }
        for (const auto& p : primes) {
            const ScanReport r = integrality_scan(s, p);
            emit(json::scan_json(name, r));
            ++total;
            if (!r.integral()) {
                ++bad;
                const auto& v = r.violations.front();
                std::cerr << "scan " << name << (p ? " p=" + std::to_string(*p) : std::string{})
                          << ": first violation at " << to_string(v.exponent) << " (" << v.coefficient.get_str()
                          << ")\n";
            }
        }
    }
    std::cerr << "scan " << job.label << " to order " << b.order << ": " << total - bad << "/" << total
              << " integral\n";
    return bad == 0 ? Ok : Failed;
}

/// Dieudonne-Dwork on one (F, G) pair; returns false on any failure.
bool dwork_pair(const Job& job, const std::string& name, const MSeries& F, const MSeries& G, std::uint64_t p)
{
    std::vector<CongruenceReport> reports;
    try {
        reports = dieudonne_dwork_check(F, G, p);
    } catch (const std::domain_error& ex) {
        emit({{"dwork", name}, {"prime", p}, {"error", ex.what()}, {"pass", false}});
        std::cerr << "dwork " << name << " p=" << p << ": " << ex.what() << '\n';
        return false;
    }
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (!r.pass) {
            ++failed;
        }
        if (!r.pass || job.all_reports) {
            nlohmann::json line = json::report_json(r);
            line["series"] = name;
            emit(line);
        }
        if (!r.pass) {
            std::cerr << "FAIL dwork " << name << " " << to_string(r.locus) << ": v_p = " << r.achieved.str()
                      << " < 1\n";
        }
    }
    emit({{"dwork", name}, {"prime", p}, {"checked", reports.size()}, {"failed", failed}, {"pass", failed == 0}});
    return failed == 0;
}

int cmd_dwork(const Job& job)
{
    bool ok = true;
    if (job.spec.series) {
        const auto primes = job.spec.primes.empty() ? std::vector<std::uint64_t>{2} : job.spec.primes;
        const MSeries F = job.spec.series->F.truncated(job.order);
        const MSeries G = job.spec.series->G.truncated(job.order);
        for (auto p : primes) {
            ok = dwork_pair(job, job.label.empty() ? "G" : job.label, F, G, p) && ok;
        }
    } else {
        const FormSystem& sys = need_system(job, "dwork");
        const auto primes = job.spec.primes.empty() ? std::vector<std::uint64_t>{2, 3, 5} : job.spec.primes;
        const MSeries F = build_F(sys, job.order);
        for (auto p : primes) {
            for (std::size_t k = 1; k <= sys.dim(); ++k) {
                ok = dwork_pair(job, "G" + std::to_string(k), F, build_Gk(sys, k, job.order), p) && ok;
            }
            for (const auto& L : enumerate_E(sys)) {
                ok = dwork_pair(job, "GL" + cli::index_tag(L), F, build_GL(sys, L, job.order), p) && ok;
            }
        }
    }
    std::cerr << "dwork " << job.label << ": " << (ok ? "pass" : "FAIL") << '\n';
    return ok ? Ok : Failed;
}

int cmd_theorem4(const Job& job)
{
    const FormSystem& sys = need_system(job, "theorem4");
    if (!sys.balanced()) {
        throw json::SchemaError("theorem4: the system must satisfy |e| = |f|");
    }
    const auto primes = job.spec.primes.empty() ? std::vector<std::uint64_t>{2, 3} : job.spec.primes;
    bool ok = true;
    for (auto p : primes) {
        Theorem4Ranges R = Theorem4Ranges::defaults(p);
        if (const auto& t = job.spec.theorem4) {
            R.s_max = t->s_max >= 0 ? t->s_max : R.s_max;
            R.K_max = t->K_max >= 0 ? t->K_max : R.K_max;
            R.m_max = t->m_max >= 0 ? t->m_max : R.m_max;
            R.ii_max = t->ii_max >= 0 ? t->ii_max : R.ii_max;
        }
        std::function<void(const CongruenceReport&)> sink;
        if (job.all_reports) {
            sink = [](const CongruenceReport& r) { emit(json::report_json(r)); };
        }
        const Theorem4Summary s = theorem4_verify(PadicContext(p, sys), R, sink);
        for (const auto& t : s.tallies) {
            emit({{"theorem4", t.check}, {"prime", p}, {"checked", t.total}, {"failed", t.failed},
                  {"pass", t.failed == 0}});
            std::cerr << "theorem4 p=" << p << " " << t.check << ": " << t.total - t.failed << "/" << t.total << '\n';
        }
        if (!job.all_reports) {
            for (const auto& r : s.failures) {
                emit(json::report_json(r));
            }
        }
        ok = ok && s.pass();
    }
    return ok ? Ok : Failed;
}

int cmd_case(const Job& job)
{
    std::optional<CaseRecord> found;
    if (job.raw_case) {
        found = json::parse_case(*job.raw_case);
    } else if (job.spec.case_record) {
        found = job.spec.case_record;
    } else {
        const std::string name = job.spec.case_name.value_or(job.label);
        found = catalog::find_case(name);
        if (!found) {
            throw json::SchemaError("case: no case record named \"" + name + "\"");
        }
    }
    const CaseRecord& rec = *found;
    const std::int64_t N = job.spec.order || job.raw_case ? job.order : std::max<std::int64_t>(job.order, 12);
    const AnnihilationReport rep = verify_annihilation(rec, N);
    emit(json::annihilation_json(rep));
    for (const auto& c : rep.checks) {
        std::cerr << "case " << rec.name << " " << c.name << ": " << (c.pass ? "pass" : "FAIL");
        if (c.first_failing_order) {
            std::cerr << " at order " << *c.first_failing_order;
        }
        std::cerr << " (" << c.detail << ")\n";
    }
    const CriterionVerdict v = classify(rec.sys, job.classify);
    nlohmann::json line = json::verdict_json(v, false);
    line["case"] = rec.name;
    emit(line);
    std::cerr << "case " << rec.name << " landau: " << to_string(v.tag) << '\n';
    return rep.pass() && v.tag == VerdictTag::CaseI ? Ok : Failed;
}

int dispatch(const std::string& cmd, const Job& job)
{
    if (cmd == "classify") {
        return cmd_classify(job);
    }
    if (cmd == "bundle") {
        return cmd_bundle(job);
    }
    if (cmd == "scan") {
        return cmd_scan(job);
    }
    if (cmd == "dwork") {
        return cmd_dwork(job);
    }
    if (cmd == "theorem4") {
        return cmd_theorem4(job);
    }
    if (cmd == "case") {
        return cmd_case(job);
    }
    throw json::SchemaError("unknown command " + cmd);
}

int cmd_run(const Job& job)
{
    if (job.spec.commands.empty()) {
        throw json::SchemaError("run: the job lists no commands");
    }
    int first_bad = Ok;
    for (const auto& cmd : job.spec.commands) {
        const int rc = dispatch(cmd, job);
        if (rc != Ok && first_bad == Ok) {
            first_bad = rc;
        }
    }
    return first_bad;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integrality checks for factorial-ratio mirror maps"};
    app.require_subcommand(1);
    Flags flags;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"classify", "Decide the Landau criterion for a form system"},
        {"bundle", "Build F, G, the canonical coordinates and mirror maps"},
        {"scan", "Scan canonical coordinates and mirror maps for non-integral coefficients"},
        {"dwork", "Dieudonne-Dwork test of exp(G/F)"},
        {"theorem4", "Finite verification of the generalized Dwork congruences"},
        {"case", "Verify a differential-operator case record"},
        {"run", "Execute the commands listed in the job"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("job", flags.input, "Job JSON path, bundled name, or - for stdin");
        sub->add_option("--order", flags.order, "Truncation order")->check(CLI::NonNegativeNumber);
        sub->add_option("--prime", flags.primes, "Prime (repeatable)");
        sub->add_option("--strategy", flags.strategy, "exhaustive, grid or sampled");
        sub->add_option("--budget", flags.budget, "Candidate budget for the classifier");
        sub->add_option("--cache-dir", flags.cache_dir, "Series cache directory");
        sub->add_flag("--no-cache", flags.no_cache, "Ignore every cache setting");
        sub->add_flag("--rebuild-cache", flags.rebuild_cache, "Rebuild corrupted cache entries");
        sub->add_flag("--all-reports", flags.all_reports, "Emit passing reports too");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : BadInput;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        const Job job = resolve(flags);
        return cmd == "run" ? cmd_run(job) : dispatch(cmd, job);
    } catch (const json::SchemaError& ex) {
        std::cerr << "invalid job: " << ex.what() << '\n';
        return BadInput;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "invalid job: " << ex.what() << '\n';
        return BadInput;
    } catch (const cli::CacheCorrupt& ex) {
        std::cerr << "cache corrupted: " << ex.what() << " (rerun with --rebuild-cache)\n";
        return CacheBroken;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return Failed;
    }
}
