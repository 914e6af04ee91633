#include <gtest/gtest.h>

#include <mirrorint/catalog.hpp>
#include <mirrorint/mirror.hpp>

#include "oracles.hpp"

using namespace mirrorint;

TEST(Mirror, ForEachIndexIsLexicographicAndComplete)
{
    std::vector<IndexVec> seen;
    for_each_index(2, 2, [&](const IndexVec& n) { seen.push_back(n); });
    const std::vector<IndexVec> expect{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    EXPECT_EQ(seen, expect);
}

TEST(Mirror, CentralBinomialF)
{
    const MSeries F = build_F(catalog::central_binomial(), 12);
    for (std::int64_t n = 0; n <= 12; ++n) {
        EXPECT_EQ(F.coeff({n}), QRational(oracle::binom(2 * n, n)));
    }
}

// G_k against a direct evaluation of its harmonic weight.
TEST(Mirror, GkMatchesDirectHarmonicSums)
{
    for (const auto& sys : {catalog::intro(), catalog::case30(), catalog::counterexample()}) {
        for (std::size_t k = 1; k <= 2; ++k) {
            const MSeries G = build_Gk(sys, k, 5);
            for_each_index(2, 5, [&](const IndexVec& n) {
                mpq_class w = 0;
                for (const auto& c : sys.e()) {
                    w += mpq_class(c[k - 1]) * oracle::harmonic(oracle::lin(c, n));
                }
                for (const auto& c : sys.f()) {
                    w -= mpq_class(c[k - 1]) * oracle::harmonic(oracle::lin(c, n));
                }
                EXPECT_EQ(G.coeff(n), oracle::ratio(sys.e(), sys.f(), n) * w) << to_string(n);
            });
        }
    }
    EXPECT_EQ(build_Gk(catalog::intro(), 1, 2).coeff({1, 0}), 15);
    EXPECT_THROW(build_Gk(catalog::intro(), 0, 2), std::out_of_range);
    EXPECT_THROW(build_Gk(catalog::intro(), 3, 2), std::out_of_range);
}

TEST(Mirror, GLRequiresMembershipInE)
{
    EXPECT_TRUE(in_E(catalog::intro(), {2, 3}));
    EXPECT_FALSE(in_E(catalog::intro(), {4, 0}));
    EXPECT_FALSE(in_E(catalog::intro(), {0, 0}));
    EXPECT_THROW(build_GL(catalog::intro(), {4, 0}, 3), std::invalid_argument);
    const MSeries GL = build_GL(catalog::central_binomial(), {2}, 6);
    for (std::int64_t n = 0; n <= 6; ++n) {
        EXPECT_EQ(GL.coeff({n}), QRational(oracle::binom(2 * n, n)) * oracle::harmonic(2 * n));
    }
}

// For e = (2), f = (1,1) the canonical coordinate is z C(z)^2 = C(z) - 1 with C the
// Catalan generating function, and its inverse is q / (1+q)^2.
TEST(Mirror, CentralBinomialMirrorMapIsCatalan)
{
    const std::int64_t N = 10;
    const MirrorBundle b = build_bundle(catalog::central_binomial(), N);
    for (std::int64_t n = 1; n <= N; ++n) {
        const mpz_class catalan = oracle::binom(2 * n, n) / (n + 1);
        EXPECT_EQ(b.q[0].coeff({n}), QRational(catalan)) << n;
        const long sign = n % 2 == 1 ? 1 : -1;
        EXPECT_EQ(b.zofq[0].coeff({n}), QRational(sign * n)) << n;
    }
    EXPECT_TRUE(inversion_round_trip(b));
    EXPECT_TRUE(integrality_equivalence(b));
}

TEST(Mirror, IntroBundleIsIntegralAndSatisfiesRetouche)
{
    const MirrorBundle b = build_bundle(catalog::intro(), 5);
    EXPECT_TRUE(b.balanced);
    EXPECT_EQ(b.qL.size(), 15u);
    for (const auto& s : b.q) {
        EXPECT_TRUE(integrality_scan(s).integral());
    }
    for (const auto& [L, s] : b.qL) {
        EXPECT_TRUE(integrality_scan(s).integral()) << to_string(L);
    }
    for (const auto& s : b.zofq) {
        EXPECT_TRUE(integrality_scan(s).integral());
    }
    EXPECT_TRUE(check_retouche(b).ok);
    EXPECT_TRUE(inversion_round_trip(b));
}

TEST(Mirror, CounterexampleSecondCoordinateIsTrivial)
{
    const MirrorBundle b = build_bundle(catalog::counterexample(), 6);
    EXPECT_EQ(b.q[1], MSeries::variable(2, 6, 1));
    const ScanReport r = integrality_scan(b.q[0], 2);
    ASSERT_FALSE(r.integral());
    EXPECT_EQ(total_degree(r.violations.front().exponent), 2);
    EXPECT_LT(*r.violations.front().valuation, Valuation{0});
    EXPECT_EQ(first_violation_degree(b.q[0], 2), 2);
    EXPECT_TRUE(integrality_equivalence(b, 2));
    EXPECT_TRUE(check_retouche(b).ok);
}

TEST(Mirror, UnivariateCounterexampleCoefficients)
{
    const FormSystem s(1, {{3}}, {{2}, {1}});
    const MirrorBundle b = build_bundle(s, 3, false);
    EXPECT_EQ(b.q[0].coeff({1}), 1);
    EXPECT_EQ(b.q[0].coeff({2}), QRational(9, 2));
    EXPECT_EQ(b.q[0].coeff({3}), QRational(175, 8));
}

TEST(Mirror, ScanLimitTruncates)
{
    MSeries s(1, 10);
    for (std::int64_t n = 1; n <= 10; ++n) {
        s.set({n}, QRational(1, 3));
    }
    const ScanReport r = integrality_scan(s, std::nullopt, 4);
    EXPECT_EQ(r.violations.size(), 4u);
    EXPECT_TRUE(r.truncated);
    EXPECT_TRUE(integrality_scan(s, 2).integral());
    EXPECT_THROW(integrality_scan(s, 4), std::invalid_argument);
}

TEST(Mirror, CanonicalCoordinateOfTrivialG)
{
    const MSeries F = build_F(catalog::intro(), 4);
    const MSeries q = canonical_coordinate(F, MSeries(2, 4), 2);
    EXPECT_EQ(q, MSeries::variable(2, 4, 1));
    EXPECT_EQ(canonical_coordinate(F, MSeries(2, 4), 0), MSeries::one(2, 4));
}
