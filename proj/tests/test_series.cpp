#include "afact/bhargava.hpp"
#include "afact/factorial_core.hpp"
#include "afact/factorial_set.hpp"
#include "afact/series.hpp"
#include "oracles.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

using namespace afact;
using big_float = boost::multiprecision::cpp_bin_float_50;

namespace {

big_float to_float(const rational& q) {
    return big_float(q.get_num().get_str()) / big_float(q.get_den().get_str());
}

rational tol(const char* s) { return parse_tolerance(s); }

// A decimal string d with `digits` places matches x to within one unit in the last place.
bool within_last_digit(const series_estimate& e, const std::string& printed) {
    auto dot = printed.find('.');
    std::size_t digits = dot == std::string::npos ? 0 : printed.size() - dot - 1;
    rational x = parse_tolerance(printed);
    rational ulp = make_rational(1, power(natural(10), digits));
    return e.lower >= x - ulp && e.upper <= x + ulp;
}

big_float float_sum(const std::function<big_float(unsigned)>& term, unsigned terms) {
    big_float s = 0;
    for (unsigned n = 0; n < terms; ++n) s += term(n);
    return s;
}

big_float float_factorial(unsigned n) {
    big_float f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<factorial_sequence> passing_sequences() {
    std::vector<factorial_sequence> v{ordinary_factorial(),     two_power_factorial(),  exceptional_factorial(2),
                                      exceptional_factorial(3), fibonacci_factorial(),  bhargava_primes_factorial(),
                                      bessel_qn_factorial(),    make_power_factorial(1), make_power_factorial(2)};
    for (std::uint64_t b = 1; b <= 4; ++b) v.push_back(make_scaled_multiple(b));
    for (auto prim : {primes_primitive(), integers_primitive()}) {
        factorial_set fs(prim);
        v.push_back(fs.as_sequence());
        v.push_back(offset_factorial(fs, 0));
        v.push_back(offset_factorial(fs, 1));
    }
    return v;
}

}  // namespace

TEST(Tolerance, Parsing) {
    EXPECT_EQ(parse_tolerance("1e-8"), make_rational(1, power(natural(10), 8)));
    EXPECT_EQ(parse_tolerance("0.001"), make_rational(1, 1000));
    EXPECT_EQ(parse_tolerance("2.5E-3"), make_rational(1, 400));
    EXPECT_EQ(parse_tolerance("1/3"), make_rational(1, 3));
    EXPECT_EQ(parse_tolerance("2"), rational(2));
    for (const char* bad : {"", "abc", "0", "-1", "1e", "0/5", "1.2.3", "1/0"})
        EXPECT_ANY_THROW(parse_tolerance(bad)) << bad;
}

TEST(Tolerance, DigitsFor) {
    EXPECT_EQ(decimal_digits_for(tol("1e-8")), 8u);
    EXPECT_EQ(decimal_digits_for(tol("5e-9")), 9u);
    EXPECT_EQ(decimal_digits_for(tol("1/3")), 1u);
    EXPECT_EQ(decimal_digits_for(rational(1)), 0u);
    EXPECT_THROW(decimal_digits_for(rational(0)), std::invalid_argument);
}

TEST(Decimal, HalfEvenRounding) {
    EXPECT_EQ(to_decimal(make_rational(1, 8), 2), "0.12");
    EXPECT_EQ(to_decimal(make_rational(3, 8), 2), "0.38");
    EXPECT_EQ(to_decimal(make_rational(5, 2), 0), "2");
    EXPECT_EQ(to_decimal(make_rational(7, 2), 0), "4");
    EXPECT_EQ(to_decimal(make_rational(-1, 8), 2), "-0.12");
    EXPECT_EQ(to_decimal(make_rational(1, 3), 5), "0.33333");
    EXPECT_EQ(to_decimal(make_rational(2, 3), 5), "0.66667");
    EXPECT_EQ(to_decimal(make_rational(1, 1000), 2), "0.00");
    EXPECT_EQ(to_decimal(rational(12), 3), "12.000");
}

TEST(Decimal, AgreesWithFloatRounding) {
    oracle::gen g(9);
    for (int t = 0; t < 500; ++t) {
        // denominators coprime to 10 avoid exact ties, where float rounding is ambiguous
        auto num = static_cast<long>(g.uniform(0, 1000000));
        auto den = static_cast<long>(g.uniform(1, 5000)) * 10 + 3;
        rational q = make_rational(num, den);
        auto s = to_decimal(q, 6);
        double x = static_cast<double>(num) / static_cast<double>(den);
        ASSERT_NEAR(std::stod(s), x, 5.0000001e-7) << num << "/" << den;
    }
}

TEST(EA, OrdinaryGivesE) {
    auto e = evaluate_e_a(ordinary_factorial(), tol("1e-9"));
    EXPECT_EQ(e.decimal, "2.718281828");
    EXPECT_LE(e.width(), tol("1e-9"));
    EXPECT_LE(to_float(e.lower), boost::multiprecision::exp(big_float(1)));
    EXPECT_GE(to_float(e.upper), boost::multiprecision::exp(big_float(1)));
}

TEST(EA, BhargavaPrimes) {
    auto e = evaluate_e_a(bhargava_primes_factorial(), tol("1e-9"));
    EXPECT_EQ(e.decimal, "2.562760934");
    EXPECT_TRUE(within_last_digit(e, "2.562760934"));
    auto coarse = evaluate_e_a(bhargava_primes_factorial(), tol("1e-8"));
    EXPECT_LE(coarse.width(), tol("1e-8"));
}

TEST(EA, EnclosureMatchesFloatSum) {
    auto seq = bhargava_primes_factorial();
    auto e = evaluate_e_a(seq, tol("1e-15"));
    big_float s = float_sum([&](unsigned n) { return 1 / big_float(seq.value_at(n).get_str()); }, 80);
    EXPECT_LE(to_float(e.lower), s);
    EXPECT_GE(to_float(e.upper), s);
}

TEST(EA, BoundsForAllPassingSequences) {
    auto e = evaluate_e_a(ordinary_factorial(), tol("1e-12"));
    for (const auto& seq : passing_sequences()) {
        auto est = evaluate_e_a(seq, tol("1e-12"));
        EXPECT_GT(est.lower, 1) << seq.name();
        EXPECT_LE(est.lower, e.upper) << seq.name();
        EXPECT_LE(est.width(), tol("1e-12"));
    }
}

TEST(EA, RejectsSequenceFailingFactorialDivisibility) {
    EXPECT_THROW(evaluate_e_a(qpow_candidate(3), tol("1e-6")), axiom_violation_error);
    EXPECT_THROW(evaluate_e_a(constant_one_candidate(), tol("1e-6")), axiom_violation_error);
}

TEST(EA, TermsApi) {
    auto one = evaluate_e_a_terms(ordinary_factorial(), 1);
    EXPECT_EQ(one.lower, 1);
    EXPECT_EQ(one.terms_used, 1u);
    EXPECT_THROW(evaluate_e_a_terms(ordinary_factorial(), 0), std::invalid_argument);
}

TEST(Alternating, CosSqrtTwo) {
    auto e = evaluate_alternating(make_scaled_multiple(2), tol("1e-12"));
    big_float c = boost::multiprecision::cos(boost::multiprecision::sqrt(big_float(2)));
    EXPECT_LE(to_float(e.lower), c);
    EXPECT_GE(to_float(e.upper), c);
    EXPECT_LT(boost::multiprecision::abs(to_float((e.lower + e.upper) / 2) - c), big_float("1e-10"));
    EXPECT_EQ(to_decimal((e.lower + e.upper) / 2, 6), "0.155944");
}

TEST(Alternating, CoshSqrtTwoFromTheSameSequence) {
    auto e = evaluate_e_a(make_scaled_multiple(2), tol("1e-12"));
    big_float c = boost::multiprecision::cosh(boost::multiprecision::sqrt(big_float(2)));
    EXPECT_LE(to_float(e.lower), c);
    EXPECT_GE(to_float(e.upper), c);
    EXPECT_LT(boost::multiprecision::abs(to_float((e.lower + e.upper) / 2) - c), big_float("1e-10"));
}

TEST(Alternating, OrdinaryGivesInverseE) {
    auto e = evaluate_alternating(ordinary_factorial(), tol("1e-10"));
    big_float inv = 1 / boost::multiprecision::exp(big_float(1));
    EXPECT_LE(to_float(e.lower), inv);
    EXPECT_GE(to_float(e.upper), inv);
}

TEST(Alternating, BesselPatternMatchesDirectSum) {
    auto e = evaluate_alternating(bessel_qn_factorial(), tol("1e-12"));
    big_float s = float_sum(
        [](unsigned n) {
            big_float f = float_factorial(n);
            big_float t = boost::multiprecision::pow(big_float(2), n / 2) / (f * f);
            return n % 2 ? -t : t;
        },
        60);
    EXPECT_LE(to_float(e.lower), s);
    EXPECT_GE(to_float(e.upper), s);
}

TEST(SetPower, IntegersWithLeadingOne) {
    factorial_set fs(integers_primitive());
    // the constant is 2.6917992098..., so correct rounding ends in 1
    EXPECT_EQ(evaluate_set_power_series(fs, 1, tol("1e-8"), true).decimal, "2.69179921");
    EXPECT_TRUE(within_last_digit(evaluate_set_power_series(fs, 1, tol("1e-10"), true), "2.69179920"));
}

TEST(SetPower, PrimesWithAndWithoutLeadingOne) {
    factorial_set fs(primes_primitive());
    auto with = evaluate_set_power_series(fs, 1, tol("1e-7"), true);
    EXPECT_EQ(with.decimal, "1.5918741");
    EXPECT_TRUE(within_last_digit(with, "1.5918741"));
    auto without = evaluate_set_power_series(fs, 1, tol("1e-7"));
    EXPECT_TRUE(within_last_digit(without, "0.5918741"));
}

TEST(SetPower, LargePowerIsDominatedByFirstTerm) {
    factorial_set fs(primes_primitive());
    unsigned k = 20;
    rational first = make_rational(1, power(2, k));
    auto e = evaluate_set_power_series(fs, k, first / 1000000);
    EXPECT_GE(e.lower, first);
    EXPECT_LE(e.upper, first * make_rational(1001, 1000));
}

TEST(SetPower, MatchesFloatSum) {
    factorial_set fs(integers_primitive());
    for (unsigned k : {1u, 2u, 3u}) {
        auto e = evaluate_set_power_series(fs, k, tol("1e-14"));
        big_float s = float_sum(
            [&](unsigned n) {
                return n == 0 ? big_float(0)
                              : 1 / boost::multiprecision::pow(big_float(fs.element_at(n).get_str()), k);
            },
            40);
        EXPECT_LE(to_float(e.lower), s) << k;
        EXPECT_GE(to_float(e.upper), s) << k;
    }
}

TEST(SetPower, RejectsNonSelfFactorialSet) {
    EXPECT_THROW(evaluate_set_power_series(factorial_set(constant_primitive(2)), 1, tol("1e-6")),
                 axiom_violation_error);
    EXPECT_THROW(evaluate_set_power_series(factorial_set(primes_primitive()), 0, tol("1e-6")),
                 std::invalid_argument);
}

TEST(PrimeFactorialSeries, PartialSums) {
    EXPECT_EQ(evaluate_prime_factorial_series_terms(1).lower, make_rational(1, 2));
    EXPECT_EQ(evaluate_prime_factorial_series_terms(2).lower, make_rational(2, 3));
}

TEST(PrimeFactorialSeries, ConvergedValue) {
    auto e = evaluate_prime_factorial_series(tol("1e-12"));
    big_float s = 0;
    for (std::uint64_t n = 1; n <= 12; ++n) s += 1 / float_factorial(static_cast<unsigned>(oracle::nth_prime(n)));
    EXPECT_LE(to_float(e.lower), s);
    EXPECT_GE(to_float(e.upper), s);
    EXPECT_EQ(e.decimal, "0.675198437911");
}

TEST(Bessel, PartialSumsAndValue) {
    EXPECT_EQ(evaluate_bessel_example_terms(1).lower, 1);
    EXPECT_EQ(evaluate_bessel_example_terms(3).lower, make_rational(5, 2));
    auto e = evaluate_bessel_example(tol("1e-8"));
    EXPECT_EQ(e.decimal, "2.56279353");
    EXPECT_TRUE(within_last_digit(e, "2.56279353"));
    big_float s = float_sum(
        [](unsigned n) {
            big_float f = float_factorial(n);
            return boost::multiprecision::pow(big_float(2), n / 2) / (f * f);
        },
        60);
    EXPECT_LE(to_float(e.lower), s);
    EXPECT_GE(to_float(e.upper), s);
}

TEST(Enclosure, DoubledDepthStaysInside) {
    struct series_case {
        std::string name;
        std::function<series_estimate(const rational&)> at_tol;
        std::function<series_estimate(std::size_t)> at_terms;  // same series, by terms_used
    };
    factorial_set primes_set(primes_primitive());
    factorial_set int_set(integers_primitive());
    std::vector<series_case> cases{
        {"bhargava", [](const rational& t) { return evaluate_e_a(bhargava_primes_factorial(), t); },
         [](std::size_t m) { return evaluate_e_a_terms(bhargava_primes_factorial(), m); }},
        {"prime-set", [&](const rational& t) { return evaluate_set_power_series(primes_set, 1, t, true); },
         [&](std::size_t m) { return evaluate_set_power_series_terms(primes_set, 1, m - 1, true); }},
        {"integer-set", [&](const rational& t) { return evaluate_set_power_series(int_set, 1, t, true); },
         [&](std::size_t m) { return evaluate_set_power_series_terms(int_set, 1, m - 1, true); }},
        {"bessel", [](const rational& t) { return evaluate_bessel_example(t); },
         [](std::size_t m) { return evaluate_bessel_example_terms(m); }},
        {"cosh", [](const rational& t) { return evaluate_e_a(make_scaled_multiple(2), t); },
         [](std::size_t m) { return evaluate_e_a_terms(make_scaled_multiple(2), m); }},
        {"cos", [](const rational& t) { return evaluate_alternating(make_scaled_multiple(2), t); },
         [](std::size_t m) { return evaluate_alternating_terms(make_scaled_multiple(2), m); }},
        {"prime-factorials", [](const rational& t) { return evaluate_prime_factorial_series(t); },
         [](std::size_t m) { return evaluate_prime_factorial_series_terms(m); }},
    };
    for (const auto& c : cases) {
        for (const char* t : {"1e-4", "1e-8", "1e-12"}) {
            auto e = c.at_tol(tol(t));
            ASSERT_LE(e.width(), tol(t)) << c.name;
            // the terms API reproduces the estimate at the same depth
            auto same = c.at_terms(e.terms_used);
            ASSERT_EQ(same.lower, e.lower) << c.name;
            ASSERT_EQ(same.upper, e.upper) << c.name;
            auto deeper = c.at_terms(2 * e.terms_used);
            EXPECT_TRUE(e.contains(deeper)) << c.name << " at " << t;
        }
    }
}
