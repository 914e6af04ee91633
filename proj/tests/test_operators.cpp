#include <gtest/gtest.h>

#include <mirrorint/catalog.hpp>
#include <mirrorint/operators.hpp>

#include "oracles.hpp"

using namespace mirrorint;

TEST(Operators, PolynomialHelpers)
{
    EXPECT_EQ(poly_mul({1, 1}, {-1, 1}), (IntPoly{-1, 0, 1}));
    EXPECT_EQ(poly_eval({3, 0, 2}, 5), 53);
    EXPECT_EQ(poly_scale({1, -2}, 3), (IntPoly{3, -6}));
    EXPECT_TRUE(poly_mul({}, {1}).empty());
}

TEST(Operators, Case30OperatorCoefficients)
{
    const ThetaOperator L = case30_operator();
    ASSERT_EQ(L.z_degree(), 2);
    for (std::int64_t t = -3; t <= 6; ++t) {
        const mpz_class T = t;
        EXPECT_EQ(poly_eval(L.P[0], T), T * T * T * T);
        EXPECT_EQ(poly_eval(L.P[1], T), -16 * (4 * T + 1) * (4 * T + 3) * (8 * T * T + 8 * T + 3));
        EXPECT_EQ(poly_eval(L.P[2], T), 4096 * (4 * T + 1) * (4 * T + 3) * (4 * T + 5) * (4 * T + 7));
    }
}

TEST(Operators, ApplyToSimpleSeries)
{
    const std::int64_t N = 6;
    const ThetaOperator th{{{0, 1}}};
    MSeries z3(1, N);
    z3.set({3}, 1);
    const LogSeries r = apply_operator(th, LogSeries{z3, MSeries(1, N)});
    EXPECT_EQ(r.regular.coeff({3}), 3);

    const ThetaOperator th2{{{0, 0, 1}}};
    const LogSeries lz = apply_operator(th2, LogSeries{MSeries(1, N), MSeries::one(1, N)});
    EXPECT_TRUE(lz.regular.is_zero());
    EXPECT_TRUE(lz.logpart.is_zero());

    const LogSeries lz1 = apply_operator(th, LogSeries{MSeries(1, N), MSeries::one(1, N)});
    EXPECT_EQ(lz1.regular, MSeries::one(1, N));

    // L z has z^1 coefficient P_0(1) = 1; the result keeps order N - 2
    const LogSeries c30 = apply_operator(case30_operator(), LogSeries{MSeries::variable(1, N, 0), MSeries(1, N)});
    EXPECT_EQ(c30.regular.coeff({1}), 1);
    EXPECT_EQ(c30.regular.order(), N - 2);
    EXPECT_EQ(c30.regular.coeff({2}), poly_eval(case30_operator().P[1], 1));
}

TEST(Operators, ClosedFormSmallValues)
{
    EXPECT_EQ(case30_closed_form(0), 1);
    EXPECT_EQ(case30_closed_form(1), 144);
    EXPECT_EQ(case30_closed_form(2), 68880);
    EXPECT_EQ(case30_closed_form(3), 43464960);
    EXPECT_THROW(lookup_closed_form("builtin:nope"), std::invalid_argument);
    EXPECT_EQ(lookup_closed_form("builtin:case30")(1), 144);
}

TEST(Operators, Case30SpecializationMatchesClosedForm)
{
    const auto [F, G] = specialized_series(case30_record(), 12);
    for (std::int64_t n = 0; n <= 12; ++n) {
        EXPECT_EQ(F.coeff({n}), QRational(case30_closed_form(n))) << n;
    }
}

// G_spec agrees with the single-sum harmonic expression
// 4H_{4n} - 2H_n - 2H_{2n} + 4H_{2(n-k)} - 4H_{n-k}.
TEST(Operators, Case30GWeightsMatchHarmonicCombination)
{
    const std::int64_t N = 9;
    const auto [F, G] = specialized_series(case30_record(), N);
    for (std::int64_t n = 0; n <= N; ++n) {
        mpq_class expect = 0;
        const mpq_class lead(oracle::fact(4 * n), oracle::fact(n) * oracle::fact(n) * oracle::fact(2 * n));
        for (std::int64_t k = 0; k <= n; ++k) {
            const mpz_class c = oracle::binom(2 * (n - k), n - k);
            mpz_class four;
            mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(k));
            const mpq_class w = 4 * oracle::harmonic(4 * n) - 2 * oracle::harmonic(n) - 2 * oracle::harmonic(2 * n) +
                                4 * oracle::harmonic(2 * (n - k)) - 4 * oracle::harmonic(n - k);
            expect += lead * mpq_class(four * c * c * oracle::binom(2 * k, k)) * w;
        }
        expect.canonicalize();
        EXPECT_EQ(G.coeff({n}), expect) << n;
    }
}

TEST(Operators, Case30AnnihilationAtModerateOrder)
{
    const AnnihilationReport rep = verify_annihilation(case30_record(), 8);
    ASSERT_EQ(rep.checks.size(), 4u);
    for (const auto& c : rep.checks) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
    }
    EXPECT_TRUE(rep.pass());
}

TEST(Operators, WrongOperatorIsCaught)
{
    CaseRecord rec = case30_record();
    rec.op.P[1][0] += 1;
    const AnnihilationReport rep = verify_annihilation(rec, 6);
    EXPECT_FALSE(rep.pass());
    EXPECT_EQ(rep.checks[1].name, "annihilates_F");
    EXPECT_FALSE(rep.checks[1].pass);
    EXPECT_EQ(rep.checks[1].first_failing_order, 1);
    EXPECT_TRUE(rep.checks[0].pass);

    CaseRecord bad_k = case30_record();
    bad_k.special.k = 3;
    EXPECT_THROW(verify_annihilation(bad_k, 4), std::invalid_argument);
}

TEST(Operators, DegenerateThetaOnConstant)
{
    const std::int64_t N = 5;
    // theta^2 kills both 1 and log z
    const ThetaOperator th{{{0, 0, 1}}};
    const auto rep = verify_annihilation_series("identity", th, MSeries::one(1, N), MSeries(1, N),
                                                lookup_closed_form("builtin:one"));
    for (const auto& c : rep.checks) {
        EXPECT_TRUE(c.pass) << c.name;
    }
}

TEST(Operators, Case30Landau)
{
    const CriterionVerdict v = case30_landau_check();
    EXPECT_EQ(v.tag, VerdictTag::CaseI);
    EXPECT_FALSE(v.sampled);
    EXPECT_EQ(catalog::find_case("case30")->name, "case30");
    EXPECT_FALSE(catalog::find_case("case31"));
}
