#pragma once

// Bhargava factorials: p-orderings of finite sets and the closed forms for the
// primes and for geometric sets.

#include "afact/arith.hpp"
#include "afact/factorial_sequence.hpp"
#include "afact/natural.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace afact {

struct p_ordering_result {
    std::uint64_t p = 0;
    std::vector<std::int64_t> order;         // a_0, a_1, ...
    std::vector<std::uint64_t> nu_exponent;  // v_p of nu_k
    std::vector<natural> nu;                 // nu_k = p^{nu_exponent[k]}
};

namespace detail {

inline void validate_finite_set(const std::vector<std::int64_t>& X) {
    constexpr std::int64_t bound = std::int64_t{1} << 31;
    for (auto x : X)
        if (x <= -bound || x >= bound) throw std::invalid_argument("bhargava: elements must satisfy |x| < 2^31");
    std::vector<std::int64_t> s = X;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("bhargava: set has duplicate elements");
}

inline std::uint64_t valuation(std::uint64_t x, std::uint64_t p) {
    std::uint64_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace detail

/// Greedy p-ordering starting at X[a0_index]. At each step the next element
/// minimizes the power of p dividing the product of its differences with the
/// elements already chosen; ties go to the smallest element.
inline p_ordering_result p_ordering(const std::vector<std::int64_t>& X, std::uint64_t p, std::size_t a0_index = 0) {
    detail::validate_finite_set(X);
    if (!is_prime(p)) throw std::invalid_argument("p_ordering: " + std::to_string(p) + " is not prime");
    if (a0_index >= X.size()) throw std::invalid_argument("p_ordering: a0 index out of range");

    p_ordering_result r;
    r.p = p;
    std::vector<std::int64_t> rest;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (i != a0_index) rest.push_back(X[i]);
    std::sort(rest.begin(), rest.end());
    std::vector<std::uint64_t> score(rest.size(), 0);  // v_p of prod (x - a_i) over chosen a_i

    auto choose = [&](std::int64_t a, std::uint64_t v) {
        r.order.push_back(a);
        r.nu_exponent.push_back(v);
        r.nu.push_back(power(p, v));
        for (std::size_t i = 0; i < rest.size(); ++i) {
            auto diff = static_cast<std::uint64_t>(rest[i] > a ? rest[i] - a : a - rest[i]);
            score[i] += detail::valuation(diff, p);
        }
    };
    choose(X[a0_index], 0);
    while (!rest.empty()) {
        // rest is sorted, so the first minimum is the smallest element
        auto best = static_cast<std::size_t>(std::min_element(score.begin(), score.end()) - score.begin());
        std::int64_t a = rest[best];
        std::uint64_t v = score[best];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
        score.erase(score.begin() + static_cast<std::ptrdiff_t>(best));
        choose(a, v);
    }
    return r;
}

/// Primes dividing at least one pairwise difference of X.
inline std::vector<std::uint64_t> difference_primes(const std::vector<std::int64_t>& X) {
    std::set<std::uint64_t> ps;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            auto d = static_cast<std::uint64_t>(X[i] > X[j] ? X[i] - X[j] : X[j] - X[i]);
            for (auto [p, e] : factorize(d)) ps.insert(p);
        }
    return {ps.begin(), ps.end()};
}

/// k!_X for k = 0, ..., |X| - 1.
inline std::vector<natural> bhargava_factorials_finite(const std::vector<std::int64_t>& X) {
    detail::validate_finite_set(X);
    std::vector<natural> out(X.size(), natural(1));
    for (std::uint64_t p : difference_primes(X)) {
        auto po = p_ordering(X, p, 0);
        for (std::size_t k = 0; k < X.size(); ++k) out[k] *= po.nu[k];
    }
    return out;
}

/// k!_X = prod_p nu_k(X, p). Defined here only for k < |X|.
inline natural bhargava_factorial_finite(const std::vector<std::int64_t>& X, std::size_t k) {
    if (k >= X.size())
        throw std::invalid_argument("bhargava_factorial_finite: k must be smaller than |X| = " +
                                    std::to_string(X.size()));
    return bhargava_factorials_finite(X)[k];
}

/// The finite Bhargava factorial as a sequence; indices >= |X| throw.
inline factorial_sequence bhargava_finite_sequence(const std::vector<std::int64_t>& X, std::string name = "bhargava-set") {
    auto vals = bhargava_factorials_finite(X);
    return factorial_sequence(std::move(name), [vals](std::size_t n, std::span<const natural>) {
        if (n >= vals.size()) throw std::out_of_range("bhargava set factorial: index beyond |X| - 1");
        return vals[n];
    });
}

namespace detail {

// Exponent of p in prod_p p^{sum_m floor(t / (p^m (p-1)))}
inline std::uint64_t bhargava_prime_exponent(std::uint64_t t, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::uint64_t q = p - 1; q <= t; q *= p) {
        v += t / q;
        if (q > t / p) break;
    }
    return v;
}

inline prime_exponents bhargava_primes_factored_at(std::uint64_t t) {
    prime_exponents r;
    for (std::uint64_t p : primes_up_to(t + 1)) {
        std::uint64_t v = bhargava_prime_exponent(t, p);
        if (v) r *= prime_exponents::of_prime_power(p, from_u64(v));
    }
    return r;
}

}  // namespace detail

/// n!_a = prod_p p^{sum_{m >= 0} floor((n-1) / (p^m (p-1)))}, the factorial
/// of the set of primes; 0!_a = 1.
inline natural bhargava_primes_closed_form(std::uint64_t n) {
    if (n == 0) return 1;
    return detail::bhargava_primes_factored_at(n - 1).value();
}

/// The same product with n in place of n - 1.
inline natural bhargava_primes_shifted_closed_form(std::uint64_t n) {
    return detail::bhargava_primes_factored_at(n).value();
}

inline factorial_sequence bhargava_primes_factorial() {
    return factorial_sequence(
        "bhargava-primes",
        [](std::size_t n, std::span<const natural>) { return bhargava_primes_closed_form(n); },
        [](std::size_t n, std::span<const prime_exponents>) {
            return n == 0 ? prime_exponents{} : detail::bhargava_primes_factored_at(n - 1);
        });
}

inline factorial_sequence bhargava_primes_shifted_factorial() {
    return factorial_sequence(
        "bhargava-primes-shifted",
        [](std::size_t n, std::span<const natural>) { return bhargava_primes_shifted_closed_form(n); },
        [](std::size_t n, std::span<const prime_exponents>) { return detail::bhargava_primes_factored_at(n); });
}

/// prod_{k=1}^{n} (q^n - q^{k-1}); 1 for n = 0.
inline natural bhargava_qpow_closed_form(std::uint64_t q, std::uint64_t n) {
    if (q < 2) throw std::invalid_argument("bhargava_qpow_closed_form: q must be >= 2");
    natural qn = power(q, n);
    natural r = 1;
    natural qk = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
        r *= qn - qk;
        qk *= q;
    }
    return r;
}

inline factorial_sequence bhargava_qpow_factorial(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("bhargava_qpow_factorial: q must be >= 2");
    return factorial_sequence("bhargava-qpow:" + std::to_string(q), [q](std::size_t n, std::span<const natural>) {
        return bhargava_qpow_closed_form(q, n);
    });
}

}  // namespace afact
