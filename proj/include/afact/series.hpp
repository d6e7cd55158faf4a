#pragma once

// Series of reciprocal factorials with exact rational partial sums and a
// proven enclosure of the limit.

#include "afact/arith.hpp"
#include "afact/errors.hpp"
#include "afact/factorial_core.hpp"
#include "afact/factorial_sequence.hpp"
#include "afact/factorial_set.hpp"
#include "afact/natural.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afact {

struct series_estimate {
    rational lower;
    rational upper;
    std::string decimal;  // midpoint rounded to the digits the tolerance supports
    std::size_t terms_used = 0;

    rational width() const { return upper - lower; }
    bool contains(const rational& x) const { return lower <= x && x <= upper; }
    bool contains(const series_estimate& inner) const { return lower <= inner.lower && inner.upper <= upper; }
};

/// Parse a positive tolerance written as an integer, a fraction "a/b", or a
/// decimal such as "0.001" or "1e-8".
inline rational parse_tolerance(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("not a tolerance: '" + s + "'"); };
    if (s.empty()) throw bad();
    rational r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        r = make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
    } else {
        std::string mantissa = s;
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mantissa = s.substr(0, e);
            exp10 = static_cast<long>(parse_integer(s.substr(e + 1)).get_si());
        }
        std::string digits;
        long frac = 0;
        bool seen_dot = false;
        for (char c : mantissa) {
            if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
                if (seen_dot) ++frac;
            } else {
                throw bad();
            }
        }
        if (digits.empty()) throw bad();
        exp10 -= frac;
        natural num(digits, 10);
        natural scale = power(natural(10), static_cast<std::uint64_t>(exp10 < 0 ? -exp10 : exp10));
        r = exp10 < 0 ? make_rational(num, scale) : rational(num * scale);
    }
    if (r <= 0) throw std::invalid_argument("tolerance must be positive: '" + s + "'");
    return r;
}

/// Smallest d >= 0 with 10^{-d} <= tol.
inline std::size_t decimal_digits_for(const rational& tol) {
    if (tol <= 0) throw std::invalid_argument("decimal_digits_for: tolerance must be positive");
    std::size_t d = 0;
    natural scale = 1;
    while (rational(1, 1) > tol * scale) {
        scale *= 10;
        ++d;
    }
    return d;
}

/// x rounded to `digits` decimal places, ties to even.
inline std::string to_decimal(const rational& x, std::size_t digits) {
    natural scale = power(natural(10), digits);
    rational scaled = x * scale;
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    natural q = scaled.get_num() / scaled.get_den();
    rational frac = scaled - q;
    rational half(1, 2);
    if (frac > half || (frac == half && q % 2 == 1)) q += 1;
    std::string s = q.get_str(10);
    if (digits > 0) {
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    if (negative && q != 0) s.insert(0, "-");
    return s;
}

namespace detail {

inline series_estimate make_estimate(rational lower, rational upper, std::size_t terms, std::size_t digits) {
    series_estimate e{std::move(lower), std::move(upper), {}, terms};
    e.decimal = to_decimal((e.lower + e.upper) / 2, digits);
    return e;
}

// Grow the truncation point from K until the enclosure is within tol and both
// ends round to the same decimal; the printed digits are then correctly rounded.
template <class WithTerms>
series_estimate refine(WithTerms&& with_terms, std::size_t K, const rational& tol, std::size_t digits) {
    series_estimate e = with_terms(K);
    for (int extra = 0; extra < 64; ++extra) {
        if (e.width() <= tol && to_decimal(e.lower, digits) == to_decimal(e.upper, digits)) break;
        e = with_terms(++K);
    }
    return e;
}

inline void require_factorial_divides(const factorial_sequence& seq, std::size_t n, const natural& v, const natural& nf) {
    if (!divides(nf, v))
        throw axiom_violation_error(n, seq.name() + ": " + std::to_string(n) +
                                           "! does not divide the value, so the tail bound does not apply");
}

// Sum 1/n!_a for n = 0..K; enclosure [S_K, S_K + 2/(K+1)!].
inline series_estimate e_a_with_terms(const factorial_sequence& seq, std::size_t K, std::size_t digits) {
    rational S = 0;
    natural nf = 1;
    for (std::size_t n = 0; n <= K; ++n) {
        if (n) nf *= n;
        natural v = seq.value_at(n);
        require_factorial_divides(seq, n, v, nf);
        S += rational(natural(1), v);
    }
    S.canonicalize();
    rational tail = make_rational(2, nf * (K + 1));
    return make_estimate(S, S + tail, K + 1, digits);
}

}  // namespace detail

/// e_a = sum_{n>=0} 1/n!_a, to within `tol`. Every index used must satisfy
/// n! | n!_a, which makes 2/(K+1)! a bound on the tail after K.
inline series_estimate evaluate_e_a(const factorial_sequence& seq, const rational& tol) {
    std::size_t digits = decimal_digits_for(tol);
    std::size_t K = 0;
    natural f = 1;  // (K+1)!
    while (make_rational(2, f) > tol) f *= (++K) + 1;
    return detail::refine([&](std::size_t k) { return detail::e_a_with_terms(seq, k, digits); }, K, tol, digits);
}

/// The same sum truncated after `terms` terms (n = 0 .. terms - 1).
inline series_estimate evaluate_e_a_terms(const factorial_sequence& seq, std::size_t terms, std::size_t digits = 12) {
    if (terms == 0) throw std::invalid_argument("evaluate_e_a_terms: need at least one term");
    return detail::e_a_with_terms(seq, terms - 1, digits);
}

namespace detail {

// sum_{n=0}^{K} (-1)^n / n!_a, enclosed by S_K and S_{K+1}.
inline series_estimate alternating_with_terms(const factorial_sequence& seq, std::size_t K, std::size_t digits) {
    auto v = seq.values_through(K + 1);
    rational S = 0;
    natural nf = 1;
    for (std::size_t n = 0; n <= K + 1; ++n) {
        if (n) nf *= n;
        require_factorial_divides(seq, n, v[n], nf);
        if (n && v[n] < v[n - 1])
            throw axiom_violation_error(n, seq.name() + ": values decrease, alternating bound does not apply");
    }
    for (std::size_t n = 0; n <= K; ++n) S += rational(natural(n % 2 ? -1 : 1), v[n]);
    S.canonicalize();
    rational next = S + rational(natural((K + 1) % 2 ? -1 : 1), v[K + 1]);
    next.canonicalize();
    return make_estimate(S < next ? S : next, S < next ? next : S, K + 1, digits);
}

}  // namespace detail

/// sum_{n>=0} (-1)^n / n!_a. The values are non-decreasing, so the limit lies
/// between consecutive partial sums.
inline series_estimate evaluate_alternating(const factorial_sequence& seq, const rational& tol) {
    std::size_t digits = decimal_digits_for(tol);
    std::size_t K = 0;
    while (rational(natural(1), seq.value_at(K + 1)) > tol) ++K;
    return detail::refine([&](std::size_t k) { return detail::alternating_with_terms(seq, k, digits); }, K, tol,
                          digits);
}

inline series_estimate evaluate_alternating_terms(const factorial_sequence& seq, std::size_t terms,
                                                  std::size_t digits = 12) {
    if (terms == 0) throw std::invalid_argument("evaluate_alternating_terms: need at least one term");
    return detail::alternating_with_terms(seq, terms - 1, digits);
}

namespace detail {

inline series_estimate set_power_with_terms(const factorial_set& fs, unsigned k, std::size_t K, bool leading_one,
                                            std::size_t digits) {
    rational S = leading_one ? 1 : 0;
    natural nf = 1;
    for (std::size_t n = 1; n <= K; ++n) {
        nf *= n;
        natural B = fs.element_at(n);
        if (!divides(nf, B))
            throw axiom_violation_error(n, fs.name() + " is not self-factorial at n=" + std::to_string(n));
        S += rational(natural(1), power(B, k));
    }
    S.canonicalize();
    rational tail = make_rational(2, nf * (K + 1));
    return make_estimate(S, S + tail, K + (leading_one ? 1 : 0), digits);
}

}  // namespace detail

/// sum_{n>=1} 1/B_n^k, plus 1 when leading_one is set (the B_0 term). Each
/// B_n used must be divisible by n!, which bounds the tail by 2/(K+1)!.
inline series_estimate evaluate_set_power_series(const factorial_set& fs, unsigned k, const rational& tol,
                                                 bool leading_one = false) {
    if (k == 0) throw std::invalid_argument("evaluate_set_power_series: k must be >= 1");
    std::size_t digits = decimal_digits_for(tol);
    std::size_t K = 1;
    natural f = 2;  // (K+1)!
    while (make_rational(2, f) > tol) f *= (++K) + 1;
    return detail::refine([&](std::size_t m) { return detail::set_power_with_terms(fs, k, m, leading_one, digits); },
                          K, tol, digits);
}

inline series_estimate evaluate_set_power_series_terms(const factorial_set& fs, unsigned k, std::size_t K,
                                                       bool leading_one = false, std::size_t digits = 12) {
    if (k == 0 || K == 0) throw std::invalid_argument("evaluate_set_power_series_terms: need k >= 1 and K >= 1");
    return detail::set_power_with_terms(fs, k, K, leading_one, digits);
}

namespace detail {

// sum_{n=1}^{K} 1/p_n!, tail below 2/p_{K+1}!.
inline series_estimate prime_factorial_with_terms(std::size_t K, std::size_t digits) {
    auto ps = first_primes(K + 1);
    rational S = 0;
    for (std::size_t n = 0; n < K; ++n) S += rational(natural(1), factorial(ps[n]));
    S.canonicalize();
    return make_estimate(S, S + make_rational(2, factorial(ps[K])), K, digits);
}

}  // namespace detail

inline series_estimate evaluate_prime_factorial_series(const rational& tol) {
    std::size_t digits = decimal_digits_for(tol);
    std::size_t K = 1;
    while (make_rational(2, factorial(nth_prime_u64(K + 1))) > tol) ++K;
    return detail::refine([&](std::size_t k) { return detail::prime_factorial_with_terms(k, digits); }, K, tol,
                          digits);
}

inline series_estimate evaluate_prime_factorial_series_terms(std::size_t terms, std::size_t digits = 12) {
    if (terms == 0) throw std::invalid_argument("evaluate_prime_factorial_series_terms: need at least one term");
    return detail::prime_factorial_with_terms(terms, digits);
}

/// n! q_n with q_n = n! / 2^{floor(n/2)}.
inline factorial_sequence bessel_qn_factorial() {
    return make_qn_factorial([](std::size_t n) -> natural { return factorial(n) / power(2, n / 2); }, "qn-bessel");
}

/// sum_{n>=0} 2^{floor(n/2)} / n!^2, the e_a of bessel_qn_factorial.
inline series_estimate evaluate_bessel_example(const rational& tol) { return evaluate_e_a(bessel_qn_factorial(), tol); }

inline series_estimate evaluate_bessel_example_terms(std::size_t terms, std::size_t digits = 12) {
    return evaluate_e_a_terms(bessel_qn_factorial(), terms, digits);
}

}  // namespace afact
