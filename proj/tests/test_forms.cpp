#include <gtest/gtest.h>

#include <mirrorint/catalog.hpp>
#include <mirrorint/forms.hpp>

#include "oracles.hpp"

using namespace mirrorint;

namespace {

void for_box(std::size_t d, std::int64_t top, const std::function<void(const IndexVec&)>& fn)
{
    IndexVec n(d, 0);
    while (true) {
        fn(n);
        std::size_t i = 0;
        while (i < d && n[i] == top) {
            n[i] = 0;
            ++i;
        }
        if (i == d) {
            return;
        }
        ++n[i];
    }
}

} // namespace

TEST(Forms, RejectsMalformedSystems)
{
    EXPECT_THROW(FormSystem(1, {}, {{1}}), std::invalid_argument);
    EXPECT_THROW(FormSystem(2, {{0, 0}}, {{1, 0}}), std::invalid_argument);
    EXPECT_THROW(FormSystem(2, {{1, 0}, {0, 1}}, {{1, 0}}), std::invalid_argument);
    EXPECT_THROW(FormSystem(2, {{1}}, {{1, 0}}), std::invalid_argument);
    EXPECT_THROW(FormSystem(1, {{-1}}, {{1}}), std::invalid_argument);
    EXPECT_THROW(FormSystem(0, {}, {}), std::invalid_argument);
    EXPECT_NO_THROW(FormSystem(FormSystem::raw, 1, {{1}, {1}}, {{2}}));
}

TEST(Forms, SumsAndBalance)
{
    const FormSystem s = catalog::intro();
    EXPECT_EQ(s.sum_e(), (IndexVec{3, 3}));
    EXPECT_EQ(s.sum_f(), (IndexVec{3, 3}));
    EXPECT_TRUE(s.balanced());
    EXPECT_FALSE(FormSystem(2, {{2, 1}}, {{1, 0}, {0, 1}}).balanced());
    EXPECT_EQ(s.max_coefficient_sum(), 6);
}

TEST(Forms, FactorialRatioSmallValues)
{
    EXPECT_EQ(factorial_ratio(catalog::central_binomial(), IndexVec{3}), 20);
    EXPECT_EQ(factorial_ratio(catalog::intro(), IndexVec{1, 1}), 720);
    EXPECT_EQ(factorial_ratio(catalog::landau_ii(), IndexVec{3}), QRational(1, 20));
    EXPECT_EQ(factorial_ratio(catalog::intro(), IndexVec{0, 0}), 1);
    EXPECT_THROW(factorial_ratio(catalog::intro(), IndexVec{-1, 0}), std::domain_error);
    EXPECT_EQ(factorial_ratio_ext(catalog::intro(), IndexVec{-1, 0}), 0);
}

TEST(Forms, FactorialRatioMatchesNaiveProduct)
{
    for (const auto& [name, sys] : catalog::systems()) {
        RatioCache cache(sys);
        for_box(sys.dim(), sys.dim() == 1 ? 12 : 5, [&](const IndexVec& n) {
            const QRational expect = oracle::ratio(sys.e(), sys.f(), n);
            EXPECT_EQ(factorial_ratio(sys, n), expect) << name << " " << to_string(n);
            EXPECT_EQ(cache(n), expect) << name << " " << to_string(n);
        });
    }
}

TEST(Forms, ValuationOrdering)
{
    const Valuation inf = Valuation::infinity();
    EXPECT_TRUE(Valuation{3} < inf);
    EXPECT_TRUE(Valuation{-2} < Valuation{0});
    EXPECT_EQ(Valuation{2} + Valuation{3}, Valuation{5});
    EXPECT_TRUE((inf + Valuation{1}).is_infinite());
    EXPECT_THROW((void)inf.value(), std::domain_error);
    EXPECT_EQ(inf.str(), "inf");
    EXPECT_TRUE(vp(Integer{0}, 5).is_infinite());
    EXPECT_EQ(vp(Integer{-48}, 2), Valuation{4});
    EXPECT_EQ(vp_of_rational(QRational(9, 40), 2), Valuation{-3});
    EXPECT_EQ(vp_of_rational(QRational(9, 40), 3), Valuation{2});
}

TEST(Forms, RequirePrime)
{
    EXPECT_NO_THROW(require_prime(13));
    EXPECT_THROW(require_prime(1), std::invalid_argument);
    EXPECT_THROW(require_prime(91), std::invalid_argument);
}

TEST(Forms, HarmonicAndBinomial)
{
    EXPECT_EQ(harmonic(0), 0);
    EXPECT_EQ(harmonic(4), QRational(25, 12));
    for (std::int64_t m = 0; m < 40; ++m) {
        EXPECT_EQ(harmonic(m), oracle::harmonic(m));
    }
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(ipow(3, 4), 81);
    EXPECT_EQ(frac(6, -4), QRational(-3, 2));
    EXPECT_THROW(frac(1, 0), std::domain_error);
}

// Legendre's formula agrees with the valuation of the exact rational, and with
// the sum of Delta over the p-adic rescalings n / p^l.
TEST(Forms, LegendreMatchesExactValuationAndLandauSum)
{
    for (const auto& [name, sys] : catalog::systems()) {
        for (std::uint64_t p : {2, 3, 5, 7}) {
            for_box(sys.dim(), sys.dim() == 1 ? 10 : 4, [&](const IndexVec& n) {
                const std::int64_t leg = vp_ratio_legendre(sys, n, p);
                const std::int64_t exact = oracle::vp(oracle::ratio(sys.e(), sys.f(), n), p);
                std::int64_t landau = 0;
                for (std::int64_t pl = static_cast<std::int64_t>(p); pl <= 64 * 64; pl *= static_cast<std::int64_t>(p)) {
                    landau += oracle::delta_grid(sys.e(), sys.f(), n, pl);
                }
                EXPECT_EQ(leg, exact) << name << " p=" << p << " n=" << to_string(n);
                EXPECT_EQ(leg, landau) << name << " p=" << p << " n=" << to_string(n);
            });
        }
    }
}

TEST(Forms, VpFactorial)
{
    EXPECT_EQ(vp_factorial(10, 2), 8);
    EXPECT_EQ(vp_factorial(25, 5), 6);
    EXPECT_EQ(vp_factorial(0, 3), 0);
}

// Nonnegative Delta makes every ratio an integer.
TEST(Forms, IntegralOnNonnegativeSystems)
{
    for (const auto& sys : {catalog::intro(), catalog::case30(), catalog::counterexample()}) {
        for_box(2, 6, [&](const IndexVec& n) { EXPECT_EQ(factorial_ratio(sys, n).get_den(), 1); });
    }
}

TEST(Forms, IndexHelpers)
{
    EXPECT_EQ(dot(IndexVec{1, 2}, IndexVec{3, 4}), 11);
    EXPECT_THROW(dot(IndexVec{1}, IndexVec{1, 2}), std::invalid_argument);
    EXPECT_TRUE(dominates(IndexVec{3, 3}, IndexVec{1, 3}));
    EXPECT_FALSE(dominates(IndexVec{3, 0}, IndexVec{1, 1}));
    EXPECT_EQ(to_string(IndexVec{1, 0}), "(1,0)");
}
