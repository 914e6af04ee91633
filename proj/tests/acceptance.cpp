// Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <mirrorint/mirrorint.hpp>

using namespace mirrorint;

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;
};

/// Records a failed sub-check; keeps the first few messages.
struct Tracker
{
    Outcome out;
    std::size_t failures = 0;

    void check(bool ok, const std::string& what)
    {
        if (ok) {
            return;
        }
        out.pass = false;
        if (++failures <= 3) {
            out.detail += (out.detail.empty() ? "" : "; ") + what;
        }
    }

    Outcome done(const std::string& summary)
    {
        if (out.pass) {
            out.detail = summary;
        } else if (failures > 3) {
            out.detail += "; " + std::to_string(failures - 3) + " more";
        }
        return out;
    }
};

const std::vector<std::uint64_t> small_primes{2, 3, 5, 7, 11, 13};

// 1. Integrality of the ratios, and Landau (ii) witnesses for the raw system.
Outcome ac1()
{
    Tracker t;
    std::size_t checked = 0;
    for (const auto& sys : {catalog::intro(), catalog::case30()}) {
        RatioCache Q(sys);
        for_each_index(2, 10, [&](const IndexVec& n) {
            ++checked;
            t.check(Q(n).get_den() == 1, "non-integral ratio at " + to_string(n));
        });
    }
    const FormSystem raw = catalog::landau_ii();
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23}) {
        const auto n = landau_ii_witness(raw, p);
        t.check(n && vp_of_rational(factorial_ratio(raw, *n), p) < Valuation{0},
                "no witness for p=" + std::to_string(p));
    }
    t.check(vp_of_rational(factorial_ratio(raw, IndexVec{3}), 5) == Valuation{-1}, "v_5(Q(3)) != -1");
    return t.done(std::to_string(checked) + " ratios integral; witnesses for 5 <= p <= 23; v_5(Q(3)) = -1");
}

// 2. Legendre, exact valuation and the Landau sum coincide.
Outcome ac2()
{
    Tracker t;
    std::size_t checked = 0;
    const std::vector<FormSystem> systems{catalog::intro(), catalog::counterexample(), catalog::case30()};
    for (const auto& sys : systems) {
        for (std::uint64_t p : {2, 3, 5, 7}) {
            for_each_index(sys.dim(), 8, [&](const IndexVec& n) {
                const std::int64_t leg = vp_ratio_legendre(sys, n, p);
                const Valuation exact = vp_of_rational(factorial_ratio(sys, n), p);
                std::int64_t landau = 0;
                for (Integer q = p; q <= 8 * sys.max_coefficient_sum(); q *= static_cast<unsigned long>(p)) {
                    RationalPoint x;
                    for (auto v : n) {
                        x.push_back(QRational{Integer{static_cast<long>(v)}, q});
                        x.back().canonicalize();
                    }
                    landau += delta_at(sys, x);
                }
                ++checked;
                t.check(exact == Valuation{leg} && landau == leg,
                        "mismatch at n=" + to_string(n) + " p=" + std::to_string(p));
            });
        }
    }
    return t.done(std::to_string(checked) + " (system, n, p) triples agree");
}

// 3. The dichotomy on the intro system and the counterexample.
Outcome ac3()
{
    Tracker t;
    t.check(classify(catalog::intro()).tag == VerdictTag::CaseI, "intro is not CaseI");
    const CriterionVerdict cx = classify(catalog::counterexample());
    t.check(cx.tag == VerdictTag::CaseII, "counterexample is not CaseII");
    t.check(cx.witness && *cx.witness == RationalPoint{QRational(1, 2), 0}, "witness is not (1/2,0)");

    const MirrorBundle b = build_bundle(catalog::counterexample(), 10, false);
    t.check(b.q[1] == MSeries::variable(2, 10, 1), "q_2 != z_2");
    std::string found;
    for (auto p : small_primes) {
        const ScanReport r = integrality_scan(b.q[0], p);
        if (!r.integral()) {
            found = "p=" + std::to_string(p) + " at " + to_string(r.violations.front().exponent);
            break;
        }
    }
    t.check(!found.empty(), "no p-adic violation of q_1 for p <= 13 at order 10");
    return t.done("intro CaseI; counterexample CaseII at (1/2,0); q_2 = z_2; q_1 violation " + found);
}

// 4. Mirror-type maps of the intro system are integral and satisfy retouche.
Outcome ac4()
{
    Tracker t;
    const MirrorBundle b = build_bundle(catalog::intro(), 8, false);
    for (const auto& [L, s] : b.qL) {
        t.check(integrality_scan(s).integral(), "q_L not integral for L=" + to_string(L));
    }
    const RetoucheResult rt = check_retouche(b);
    t.check(rt.ok, "retouche fails");
    return t.done(std::to_string(b.qL.size()) + " maps q_L integral to degree 8; retouche holds");
}

// 5. Dieudonne-Dwork: e^z fails at z^2, the intro system passes, Phi formulas match.
Outcome ac5()
{
    Tracker t;
    const std::int64_t N = 8;
    const auto ez = dieudonne_dwork_check(MSeries::one(1, N), MSeries::variable(1, N, 0), 2);
    std::optional<std::int64_t> first;
    for (const auto& r : ez) {
        if (!r.pass) {
            first = r.locus.front().value.at(0);
            break;
        }
    }
    t.check(first == 2, "e^z does not first fail at z^2");

    const FormSystem sys = catalog::intro();
    const MSeries F = build_F(sys, N);
    std::vector<std::pair<std::string, MSeries>> Gs;
    for (std::size_t k = 1; k <= 2; ++k) {
        Gs.emplace_back("G" + std::to_string(k), build_Gk(sys, k, N));
    }
    const auto E = enumerate_E(sys);
    for (const auto& L : E) {
        Gs.emplace_back("G_L" + to_string(L), build_GL(sys, L, N));
    }
    for (std::uint64_t p : {2, 3, 5}) {
        for (const auto& [name, G] : Gs) {
            t.check(all_pass(dieudonne_dwork_check(F, G, p)), name + " fails for p=" + std::to_string(p));
        }
    }

    std::size_t phi_checked = 0;
    for (std::uint64_t p : {2, 3, 5}) {
        const PadicContext ctx(p, sys);
        const auto pi = static_cast<std::int64_t>(p);
        for (std::size_t g = 0; g < Gs.size(); ++g) {
            const MSeries comb = dwork_combination(F, Gs[g].second, p);
            for_each_box(2, pi, [&](const IndexVec& a) {
                for_each_index(2, N, [&](const IndexVec& K) {
                    const IndexVec n{a[0] + pi * K[0], a[1] + pi * K[1]};
                    if (total_degree(n) > N) {
                        return;
                    }
                    const QRational phi = g < 2 ? phi_pk(ctx, g + 1, a, K) : phi_Lp(ctx, E[g - 2], a, K);
                    ++phi_checked;
                    t.check(phi == comb.coeff(n), Gs[g].first + " Phi mismatch at " + to_string(n));
                });
            });
        }
    }
    return t.done("e^z fails at z^2 (p=2); " + std::to_string(Gs.size()) +
                  " series pass for p in {2,3,5}; " + std::to_string(phi_checked) + " Phi values match");
}

// 6. Congruence hypotheses, conclusion and telescoping on the intro system.
Outcome ac6()
{
    Tracker t;
    std::ostringstream summary;
    for (std::uint64_t p : {2, 3}) {
        const Theorem4Summary s = theorem4_verify(PadicContext(p, catalog::intro()), Theorem4Ranges::defaults(p));
        std::uint64_t total = 0;
        for (const auto& tally : s.tallies) {
            total += tally.total;
            t.check(tally.failed == 0, tally.check + " fails " + std::to_string(tally.failed) + "x for p=" +
                                           std::to_string(p));
            t.check(tally.total > 0, tally.check + " never exercised for p=" + std::to_string(p));
        }
        summary << "p=" << p << ": " << total << " checks; ";
    }
    return t.done(summary.str() + "hypotheses, conclusion and telescoping hold");
}

// 7. Gamma_p identities and the ratio-quotient congruence.
Outcome ac7()
{
    Tracker t;
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::int64_t n = 0; n <= 30; ++n) {
            t.check(lemma7_i(n, p), "(np)!/n! identity fails at n=" + std::to_string(n) + " p=" + std::to_string(p));
        }
    }
    for (std::uint64_t p : {2, 3, 5}) {
        std::size_t fails = 0;
        std::ostringstream first;
        for (std::int64_t k = 0; k <= 20; ++k) {
            for (std::int64_t n = 0; n <= 5; ++n) {
                for (std::int64_t s = 0; s <= 3; ++s) {
                    if (!lemma7_ii(k, n, s, p) && fails++ == 0) {
                        first << "k=" << k << " n=" << n << " s=" << s;
                    }
                }
            }
        }
        t.check(fails == 0, "Gamma_p(k+np^s) = Gamma_p(k) mod p^s at p=" + std::to_string(p) + " fails " + std::to_string(fails) +
                                "/504 instances, first " + first.str());
    }

    std::size_t l6 = 0;
    for (const auto& sys : {catalog::intro(), catalog::counterexample(), catalog::case30()}) {
        for (std::uint64_t p : {2, 3}) {
            const PadicContext ctx(p, sys);
            for (std::int64_t s = 0; s <= 2; ++s) {
                for_each_box(2, ctx.pow(s), [&](const IndexVec& c) {
                    for_each_box(2, 5, [&](const IndexVec& m) {
                        const CongruenceReport r = lemma6_check(ctx, s, c, m);
                        ++l6;
                        t.check(r.pass, "ratio-quotient congruence fails at " + to_string(r.locus));
                    });
                });
            }
        }
    }
    return t.done("(np)!/n! identity for n <= 30; Gamma_p periodicity for k <= 20, n <= 5, s <= 3; " + std::to_string(l6) +
                  " ratio-quotient instances");
}

// 8. The case30 operator and its specialization.
Outcome ac8()
{
    Tracker t;
    const CaseRecord rec = case30_record();
    const auto [F, G] = specialized_series(rec, 12);
    t.check(F.coeff({1}) == 144, "F_spec[1] != 144");
    const AnnihilationReport rep = verify_annihilation(rec, 12);
    for (const auto& c : rep.checks) {
        t.check(c.pass, c.name + " fails (" + c.detail + ")");
    }
    t.check(rep.checks.size() == 4, "missing annihilation checks");
    const CriterionVerdict v = case30_landau_check();
    t.check(v.tag == VerdictTag::CaseI && !v.sampled, "case30 is not certified CaseI");
    return t.done("closed form to n=12 (F_1 = 144); L F = L(G + log z F) = 0 to order 10; CaseI; q integral to 12");
}

// 9. Inversion round trips and the integrality equivalence on CaseI systems.
Outcome ac9()
{
    Tracker t;
    std::ostringstream summary;
    for (const auto& [name, sys] : catalog::systems()) {
        if (sys.is_raw()) {
            continue;
        }
        ClassifyOptions opt;
        if (classify(sys, opt).tag != VerdictTag::CaseI) {
            continue;
        }
        const std::int64_t N = sys.dim() == 1 ? 12 : (name == "case30" ? 5 : 7);
        const MirrorBundle b = build_bundle(sys, N);
        t.check(inversion_round_trip(b), name + ": round trip fails");
        for (std::optional<std::uint64_t> p : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{2},
                                               std::optional<std::uint64_t>{3}}) {
            t.check(integrality_equivalence(b, p), name + ": integrality equivalence fails");
        }
        summary << name << " N=" << N << "; ";
    }
    return t.done(summary.str() + "round trips exact, equivalence holds");
}

// 10. Exhaustive and grid strategies agree on every bundled system.
Outcome ac10()
{
    Tracker t;
    std::ostringstream summary;
    for (const auto& [name, sys] : catalog::systems()) {
        ClassifyOptions opt;
        opt.cross_check = false;
        const CriterionVerdict ex = classify_with(sys, Strategy::Exhaustive, opt);
        const CriterionVerdict gr = classify_with(sys, Strategy::Grid, opt);
        t.check(ex.tag == gr.tag, name + ": exhaustive " + to_string(ex.tag) + " vs grid " + to_string(gr.tag));
        t.check(!ex.budget_exceeded, name + ": exhaustive strategy ran out of budget");
        summary << name << "=" << to_string(ex.tag) << " ";
    }
    return t.done(summary.str());
}

} // namespace

int main()
{
    struct Criterion
    {
        const char* id;
        double limit_s; // 0: no limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1 Landau integrality", 5, ac1},          {"AC2 valuation identity", 10, ac2},
        {"AC3 dichotomy", 60, ac3},                  {"AC4 mirror-type maps", 60, ac4},
        {"AC5 Dieudonne-Dwork", 30, ac5},            {"AC6 generalized Dwork congruences", 120, ac6},
        {"AC7 gamma identities", 30, ac7}, {"AC8 case30 operator", 120, ac8},
        {"AC9 inversion round trips", 60, ac9},      {"AC10 classifier strategy agreement", 0, ac10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
        }
        std::printf("[%s] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
