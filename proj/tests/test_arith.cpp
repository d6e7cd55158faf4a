#include "afact/arith.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace afact;

TEST(DivisorCount, Examples) {
    EXPECT_EQ(divisor_count(1), 1);
    EXPECT_EQ(divisor_count(12), 6);
    EXPECT_EQ(divisor_count(6), 4);
    EXPECT_THROW(divisor_count(0), std::invalid_argument);
}

TEST(DivisorCount, MatchesNaiveCount) {
    for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_EQ(divisor_count(n), oracle::d(n)) << n;
}

TEST(DivisorPowerSum, Examples) {
    EXPECT_EQ(divisor_power_sum(1, 6), 12);
    EXPECT_EQ(divisor_power_sum(0, 9), 3);
    EXPECT_EQ(divisor_power_sum(2, 2), 5);
    EXPECT_THROW(divisor_power_sum(1, 0), std::invalid_argument);
}

TEST(DivisorPowerSum, MatchesDivisorEnumeration) {
    oracle::gen g(11);
    for (int t = 0; t < 400; ++t) {
        auto n = g.uniform(1, 5000);
        auto k = static_cast<unsigned>(g.uniform(0, 4));
        ASSERT_EQ(divisor_power_sum(k, n), oracle::sigma(k, n)) << "k=" << k << " n=" << n;
    }
}

TEST(SummatorySigma, Examples) {
    EXPECT_EQ(summatory_sigma(0, 12), 35);
    EXPECT_EQ(summatory_sigma(1, 11), 99);
    EXPECT_EQ(summatory_sigma(2, 5), 63);
    EXPECT_THROW(summatory_sigma(0, 0), std::invalid_argument);
}

TEST(SummatorySigma, PrefixSequences) {
    const std::vector<int> d_sums{1, 3, 5, 8, 10, 14, 16, 20, 23, 27, 29, 35};
    const std::vector<int> s1_sums{1, 4, 8, 15, 21, 33, 41, 56, 69, 87, 99};
    const std::vector<int> s2_sums{1, 6, 16, 37, 63, 113, 163, 248, 339, 469, 591};
    for (std::size_t i = 0; i < d_sums.size(); ++i) EXPECT_EQ(summatory_sigma(0, i + 1), d_sums[i]);
    for (std::size_t i = 0; i < s1_sums.size(); ++i) EXPECT_EQ(summatory_sigma(1, i + 1), s1_sums[i]);
    for (std::size_t i = 0; i < s2_sums.size(); ++i) EXPECT_EQ(summatory_sigma(2, i + 1), s2_sums[i]);
}

TEST(SummatorySigma, HermiteIdentityBothRoutes) {
    for (unsigned k = 0; k <= 3; ++k) {
        natural running = 0;
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            running += divisor_power_sum(k, n);
            ASSERT_EQ(sigma_prefix_sum_hermite(k, n), running) << "k=" << k << " n=" << n;
        }
        ASSERT_EQ(sigma_prefix_sum_direct(k, 10000), running);
    }
}

TEST(SummatorySigma, LargeParametersUseExactArithmetic) {
    // k large enough that the u128 route is not available
    EXPECT_EQ(sigma_prefix_sum_direct(20, 300), sigma_prefix_sum_hermite(20, 300));
    natural expect = 0;
    for (std::uint64_t i = 1; i <= 300; ++i) expect += oracle::sigma(20, i);
    EXPECT_EQ(summatory_sigma(20, 300), expect);
}

TEST(VonMangoldt, Examples) {
    EXPECT_EQ(von_mangoldt_exp(1), 1);
    EXPECT_EQ(von_mangoldt_exp(8), 2);
    EXPECT_EQ(von_mangoldt_exp(6), 1);
    EXPECT_THROW(von_mangoldt_exp(0), std::invalid_argument);
}

TEST(VonMangoldt, MatchesNaive) {
    for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_EQ(von_mangoldt_exp(n), oracle::von_mangoldt_exp(n)) << n;
}

TEST(VonMangoldt, ProductIdentityGivesFactorial) {
    for (std::uint64_t n = 1; n <= 500; ++n) {
        natural prod = 1;
        for (std::uint64_t i = 1; i <= n; ++i) prod *= power(von_mangoldt_exp(i), n / i);
        ASSERT_EQ(prod, oracle::fact(n)) << n;
    }
}

TEST(CumulativeDivisorProduct, Examples) {
    EXPECT_EQ(cumulative_divisor_product(4), 48);
    EXPECT_EQ(cumulative_divisor_product(1), 1);
    EXPECT_EQ(cumulative_divisor_product(10), natural("10450944000"));
    EXPECT_THROW(cumulative_divisor_product(0), std::invalid_argument);
}

TEST(CumulativeDivisorProduct, ThreeRoutesAgree) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
        natural a = cumulative_product_by_floor_powers(n);
        ASSERT_EQ(a, cumulative_product_by_factorials(n)) << n;
        ASSERT_EQ(a, cumulative_product_by_divisors(n)) << n;
    }
}

TEST(CumulativeDivisorProduct, MatchesDivisorOracle) {
    for (std::uint64_t n = 1; n <= 40; ++n) {
        mpz_class prod = 1;
        for (std::uint64_t m = 1; m <= n; ++m)
            for (auto d : oracle::divisors(m)) prod *= static_cast<unsigned long>(d);
        ASSERT_EQ(cumulative_divisor_product(n), prod) << n;
    }
}

TEST(Legendre, Examples) {
    EXPECT_EQ(legendre_valuation(10, 2), 8u);
    EXPECT_EQ(legendre_valuation(0, 3), 0u);
    EXPECT_EQ(legendre_valuation(6, 5), 1u);
    EXPECT_THROW(legendre_valuation(10, 4), std::invalid_argument);
}

TEST(Legendre, ReassemblesFactorial) {
    for (std::uint64_t n = 0; n <= 200; ++n) {
        natural prod = 1;
        for (std::uint64_t p = 2; p <= n; ++p)
            if (oracle::is_prime(p)) prod *= power(p, legendre_valuation(n, p));
        ASSERT_EQ(prod, oracle::fact(n)) << n;
    }
}

TEST(RepresentationsPm, Examples) {
    EXPECT_EQ(representations_pm(4), (std::vector<pm_representation>{{2, 2}, {5, 0}}));
    EXPECT_TRUE(representations_pm(7).empty());
    EXPECT_TRUE(representations_pm(9).empty());
    EXPECT_EQ(representations_pm(6), (std::vector<pm_representation>{{3, 1}, {7, 0}}));
    EXPECT_THROW(representations_pm(0), std::invalid_argument);
}

TEST(RepresentationsPm, AtMostTwoUpTo1e5) {
    for (std::uint64_t n = 1; n <= 100000; ++n) ASSERT_LE(representations_pm(n).size(), 2u) << n;
}

TEST(RepresentationsPm, MatchesExhaustiveSearch) {
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        std::vector<pm_representation> expect;
        for (std::uint64_t p = 2; p <= n + 1; ++p) {
            if (!oracle::is_prime(p) || n % (p - 1)) continue;
            std::uint64_t r = n / (p - 1);
            unsigned m = 0;
            while (r % p == 0) { r /= p; ++m; }
            if (r == 1) expect.push_back({p, m});
        }
        ASSERT_EQ(representations_pm(n), expect) << n;
    }
}

TEST(NthPrime, Examples) {
    EXPECT_EQ(nth_prime(1), 2);
    EXPECT_EQ(nth_prime(4), 7);
    EXPECT_EQ(nth_prime(25), 97);
    EXPECT_THROW(nth_prime(0), std::invalid_argument);
}

TEST(NthPrime, MatchesTrialDivision) {
    for (std::uint64_t n = 1; n <= 500; ++n) ASSERT_EQ(nth_prime_u64(n), oracle::nth_prime(n)) << n;
    // beyond the default sieve
    EXPECT_EQ(nth_prime_u64(100000), 1299709u);
}

TEST(PrimeTable, Invariants) {
    prime_table t(10000);
    ASSERT_EQ(t[0], 2u);
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        if (oracle::is_prime(n)) {
            ASSERT_LT(idx, t.size());
            ASSERT_EQ(t[idx++], n);
        }
    }
    EXPECT_EQ(idx, t.size());
}

TEST(Factorize, RoundTripsAboveAndBelowSieve) {
    oracle::gen g(5);
    for (int t = 0; t < 300; ++t) {
        std::uint64_t n = t % 2 ? g.uniform(1, 1u << 20) : g.uniform(1u << 20, std::uint64_t{1} << 40);
        natural prod = 1;
        std::uint64_t last = 0;
        for (auto [p, e] : factorize(n)) {
            ASSERT_GT(p, last);
            ASSERT_TRUE(oracle::is_prime(p)) << p;
            prod *= power(p, e);
            last = p;
        }
        ASSERT_EQ(prod, from_u64(n));
    }
}

TEST(PrimeExponents, FactorialAndArithmetic) {
    for (std::uint64_t n = 0; n <= 60; ++n) ASSERT_EQ(prime_exponents::of_factorial(n).value(), oracle::fact(n));
    auto a = prime_exponents::of(360);
    auto b = prime_exponents::of(12);
    EXPECT_TRUE(b.divides(a));
    EXPECT_FALSE(a.divides(b));
    EXPECT_EQ(a.exact_quotient(b).value(), 30);
    EXPECT_EQ((a * b).value(), 4320);
    EXPECT_EQ(b.pow(3).value(), 1728);
    EXPECT_THROW(b.exact_quotient(a), std::domain_error);
}

TEST(Rational, CanonicalForm) {
    rational q = make_rational(28, 6);
    EXPECT_EQ(q.get_num(), 14);
    EXPECT_EQ(q.get_den(), 3);
    EXPECT_EQ(to_string(q), "14/3");
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Natural, ParseAndNarrow) {
    EXPECT_EQ(parse_integer(" -17 "), -17);
    EXPECT_EQ(parse_integer("+5"), 5);
    EXPECT_THROW(parse_integer("12a"), std::invalid_argument);
    EXPECT_THROW(parse_integer("-"), std::invalid_argument);
    unsigned __int128 big = (static_cast<unsigned __int128>(1) << 100) + 12345;
    EXPECT_TRUE(to_u128(from_u128(big)) == big);
    EXPECT_THROW(to_u64(power(2, 64)), std::out_of_range);
}
