#include "walkvisits/dyadic.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

using walkvisits::BigInt;
using walkvisits::BigRational;
using walkvisits::Dyadic;

TEST(DyadicTest, canonical_form)
{
    const Dyadic d(BigInt(12), 5);  // 12/32 = 3/8
    EXPECT_EQ(BigInt(3), d.mantissa());
    EXPECT_EQ(3, d.exponent());

    const Dyadic zero(BigInt(0), 17);
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(0, zero.exponent());
    EXPECT_EQ(Dyadic{}, zero);

    EXPECT_EQ(Dyadic::one(), Dyadic(BigInt(1024), 10));
    EXPECT_EQ(0, Dyadic::one().exponent());
}

TEST(DyadicTest, arithmetic)
{
    const Dyadic quarter = Dyadic::inverse_pow2(2);
    const Dyadic half = Dyadic::inverse_pow2(1);
    EXPECT_EQ(half, quarter + quarter);
    EXPECT_EQ(quarter, half - quarter);
    EXPECT_EQ(Dyadic::inverse_pow2(3), half * quarter);
    EXPECT_EQ(quarter, half.half());
    EXPECT_EQ(Dyadic::one(), quarter.scaled_pow2(-2));
    EXPECT_EQ(-quarter, quarter - half);
    EXPECT_LT(quarter, half);
    EXPECT_GT(Dyadic::one(), half);
    EXPECT_TRUE(half.is_probability());
    EXPECT_FALSE((-half).is_probability());
    EXPECT_FALSE((half + Dyadic::one()).is_probability());
}

TEST(DyadicTest, text_round_trip)
{
    EXPECT_EQ("3/2^2", Dyadic(BigInt(3), 2).str());
    EXPECT_EQ("1/2^0", Dyadic::one().str());
    EXPECT_EQ("0/2^0", Dyadic{}.str());
    EXPECT_EQ(Dyadic(BigInt(-5), 7), Dyadic::parse("-5/2^7"));
    EXPECT_EQ(Dyadic(BigInt(3), 1), Dyadic::parse("6/2^2"));
    EXPECT_THROW(Dyadic::parse("3/4"), walkvisits::domain_error);
    EXPECT_THROW(Dyadic::parse("x/2^3"), walkvisits::domain_error);
    EXPECT_THROW(Dyadic::parse("3/2^"), walkvisits::domain_error);
}

TEST(DyadicTest, rational_conversion)
{
    EXPECT_EQ(BigRational(3, 8), Dyadic(BigInt(3), 3).to_rational());
    EXPECT_EQ(BigRational(12), Dyadic(BigInt(3), -2).to_rational());
}

// The float rendering must be the correctly rounded value: the exact
// error is at most half an ulp, and on a tie the even neighbour wins.
TEST(DyadicTest, to_double_is_correctly_rounded)
{
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 2000; ++trial) {
        BigInt m = 0;
        const int words = 1 + static_cast<int>(rng() % 6);
        for (int w = 0; w < words; ++w) {
            m = (m << 64) | BigInt(rng());
        }
        if (m.is_zero()) {
            continue;
        }
        const auto e = static_cast<std::int64_t>(rng() % 600);
        const Dyadic d(m, e);
        const double f = d.to_double();
        ASSERT_TRUE(std::isfinite(f));

        const BigRational exact = d.to_rational();
        const BigRational err = abs(BigRational(f) - exact);
        const double up = std::nextafter(f, std::numeric_limits<double>::infinity());
        const BigRational half_ulp = (BigRational(up) - BigRational(f)) / 2;
        ASSERT_LE(err, half_ulp) << d;
    }
}

TEST(DyadicTest, to_double_ties_to_even)
{
    // 2^53 + 1 lies halfway between 2^53 and 2^53 + 2.
    const Dyadic tie((BigInt(1) << 53) + 1, 0);
    EXPECT_EQ(std::ldexp(1.0, 53), tie.to_double());
    // Far below the tie, a sticky bit must still round up past it.
    const Dyadic above_tie(((BigInt(1) << 53) + 1) * (BigInt(1) << 100) + 1, 100);
    EXPECT_EQ(std::ldexp(1.0, 53) + 2.0, above_tie.to_double());
    EXPECT_EQ(0.0, Dyadic(BigInt(1), 5000).to_double());
    EXPECT_EQ(-0.375, Dyadic(BigInt(-3), 3).to_double());
}
