#pragma once

// Axiom checking, generalized binomials, consecutive ratios and the named
// abstract-factorial constructors.

#include "afact/arith.hpp"
#include "afact/errors.hpp"
#include "afact/factorial_sequence.hpp"
#include "afact/natural.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace afact {

/// Outcome of checking the three defining conditions of an abstract factorial
/// over 0 <= k <= n <= checked_to. Failures are listed exhaustively, in
/// ascending (n, k) order.
struct axiom_report {
    std::size_t checked_to = 0;
    bool axiom1_ok = true;                                       // 0!_a = 1
    std::vector<std::pair<std::size_t, std::size_t>> axiom2_failures;  // (n, k), binomial not integral
    std::vector<std::size_t> axiom3_failures;                    // n with n! not dividing n!_a

    bool passed() const noexcept { return axiom1_ok && axiom2_failures.empty() && axiom3_failures.empty(); }
};

namespace detail {

template <class Rep>
Rep factorial_as(std::size_t n);

template <>
inline natural factorial_as<natural>(std::size_t n) { return factorial(n); }

template <>
inline prime_exponents factorial_as<prime_exponents>(std::size_t n) { return prime_exponents::of_factorial(n); }

inline bool is_unit(const natural& x) { return x == 1; }
inline bool is_unit(const prime_exponents& x) { return x.is_one(); }

template <class Rep>
axiom_report verify_axioms_over(std::span<const Rep> v, std::size_t N) {
    axiom_report r;
    r.checked_to = N;
    r.axiom1_ok = is_unit(v[0]);
    for (std::size_t n = 0; n <= N; ++n) {
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; 2 * k <= n; ++k)
            if (!divides(v[k] * v[n - k], v[n])) bad.push_back(k);
        std::vector<std::size_t> mirrored;
        for (std::size_t k : bad) {
            r.axiom2_failures.emplace_back(n, k);
            if (n - k != k) mirrored.push_back(n - k);
        }
        for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it) r.axiom2_failures.emplace_back(n, *it);
        if (n >= 1 && !divides(factorial_as<Rep>(n), v[n])) r.axiom3_failures.push_back(n);
    }
    std::sort(r.axiom2_failures.begin(), r.axiom2_failures.end());
    return r;
}

}  // namespace detail

/// Check the axioms on integer values.
inline axiom_report verify_axioms_by_value(const factorial_sequence& seq, std::size_t N) {
    auto v = seq.values_through(N);
    return detail::verify_axioms_over<natural>(v, N);
}

/// Check the axioms on exact prime-exponent vectors.
inline axiom_report verify_axioms_factored(const factorial_sequence& seq, std::size_t N) {
    auto v = seq.factored_through(N);
    return detail::verify_axioms_over<prime_exponents>(v, N);
}

/// Check 0!_a = 1, integrality of every generalized binomial with n <= N, and
/// n! | n!_a. Uses the factored representation when the sequence has one.
inline axiom_report verify_axioms(const factorial_sequence& seq, std::size_t N) {
    return seq.has_factored() ? verify_axioms_factored(seq, N) : verify_axioms_by_value(seq, N);
}

/// n!_a / (k!_a (n-k)!_a). Throws non_integral_error when the quotient is not an integer.
inline natural binomial(const factorial_sequence& seq, std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("binomial: need 0 <= k <= n");
    natural den = seq.value_at(k) * seq.value_at(n - k);
    natural num = seq.value_at(n);
    if (!divides(den, num))
        throw non_integral_error(n, k, seq.name() + ": binomial (" + std::to_string(n) + ", " +
                                           std::to_string(k) + ") is not an integer");
    return num / den;
}

/// Pointwise product n -> a(n) b(n). Abstract factorials are closed under it.
inline factorial_sequence semigroup_product(const factorial_sequence& a, const factorial_sequence& b) {
    factorial_sequence::factored_rule f;
    if (a.has_factored() && b.has_factored())
        f = [a, b](std::size_t n, std::span<const prime_exponents>) { return a.factored_at(n) * b.factored_at(n); };
    return factorial_sequence(
        "(" + a.name() + ")*(" + b.name() + ")",
        [a, b](std::size_t n, std::span<const natural>) -> natural { return a.value_at(n) * b.value_at(n); }, std::move(f));
}

struct ratio_profile_result {
    std::vector<natural> ratios;           // r_k = (k+1)!_a / k!_a for k < N
    std::vector<std::size_t> equal_pairs;  // k >= 1 with r_k = 1
};

namespace detail {

// Checks shared by the value and factored routes: equal consecutive
// values come in isolated pairs, and r_k = 1 with 2!_a != 2 forces r_{k-1} >= 3.
inline void check_equal_pairs(const std::string& name, const std::vector<std::size_t>& equal,
                              bool second_is_two, const std::function<bool(std::size_t)>& ratio_at_most_two) {
    for (std::size_t i = 0; i < equal.size(); ++i) {
        std::size_t k = equal[i];
        if (i + 1 < equal.size() && equal[i + 1] == k + 1)
            throw axiom_violation_error(k, name + ": three consecutive equal factorials starting at " +
                                               std::to_string(k));
        if (k >= 2 && !second_is_two && ratio_at_most_two(k - 1))
            throw axiom_violation_error(k, name + ": r_" + std::to_string(k) + " = 1 but r_" +
                                               std::to_string(k - 1) + " < 3");
    }
}

}  // namespace detail

/// All ratios r_k for k < N, with the equal-consecutive indices. Throws
/// non_integral_error on a non-integral ratio, axiom_violation_error when the
/// equal pairs break the structure every abstract factorial has.
inline ratio_profile_result ratio_profile(const factorial_sequence& seq, std::size_t N) {
    ratio_profile_result out;
    auto v = seq.values_through(N);
    for (std::size_t k = 0; k < N; ++k) {
        if (!divides(v[k], v[k + 1]))
            throw non_integral_error(k + 1, k, seq.name() + ": ratio r_" + std::to_string(k) + " is not an integer");
        out.ratios.push_back(v[k + 1] / v[k]);
        if (k >= 1 && out.ratios.back() == 1) out.equal_pairs.push_back(k);
    }
    bool second_is_two = N >= 2 && v[2] == 2;
    detail::check_equal_pairs(seq.name(), out.equal_pairs, second_is_two,
                              [&](std::size_t j) { return out.ratios[j] <= 2; });
    return out;
}

/// Indices k in [1, N) with (k+1)!_a = k!_a, using the factored representation
/// when present. Applies the same structural checks as ratio_profile.
inline std::vector<std::size_t> equal_consecutive_indices(const factorial_sequence& seq, std::size_t N) {
    if (!seq.has_factored()) return ratio_profile(seq, N).equal_pairs;
    auto v = seq.factored_through(N);
    std::vector<std::size_t> equal;
    std::vector<prime_exponents> ratios;
    for (std::size_t k = 0; k < N; ++k) {
        if (!v[k].divides(v[k + 1]))
            throw non_integral_error(k + 1, k, seq.name() + ": ratio r_" + std::to_string(k) + " is not an integer");
        ratios.push_back(v[k + 1].exact_quotient(v[k]));
        if (k >= 1 && ratios.back().is_one()) equal.push_back(k);
    }
    const prime_exponents two = prime_exponents::of(2);
    bool second_is_two = N >= 2 && v[2] == two;
    detail::check_equal_pairs(seq.name(), equal, second_is_two,
                              [&](std::size_t j) { return ratios[j].is_one() || ratios[j] == two; });
    return equal;
}

// ---------------------------------------------------------------------------
// Named constructors
// ---------------------------------------------------------------------------

inline factorial_sequence ordinary_factorial() {
    return factorial_sequence(
        "ordinary",
        [](std::size_t n, std::span<const natural> prev) -> natural { return n == 0 ? natural(1) : prev[n - 1] * n; },
        [](std::size_t n, std::span<const prime_exponents>) { return prime_exponents::of_factorial(n); });
}

/// n! 2^{n(n+1)/2}
inline factorial_sequence two_power_factorial() {
    return factorial_sequence(
        "two-power",
        [](std::size_t n, std::span<const natural>) -> natural { return factorial(n) * power(2, n * (n + 1) / 2); },
        [](std::size_t n, std::span<const prime_exponents>) {
            return prime_exponents::of_factorial(n) * prime_exponents::of_prime_power(2, from_u64(n * (n + 1) / 2));
        });
}

/// The exceptional factorial: 0!_a = 1!_a = 1, (n+1)!_a = n!_a for n = 3m-1,
/// n!_a = n!(n+1)! prod_{j<n} (n-j)!_a^e for n = 3m-1 and
/// n!_a = n! prod_{j<n} (n-j)!_a^e for n = 3m+1.
inline factorial_sequence exceptional_factorial(unsigned exponent = 2) {
    if (exponent < 2) throw std::invalid_argument("exceptional_factorial: exponent must be >= 2");
    auto values = [exponent](std::size_t n, std::span<const natural> prev) -> natural {
        if (n <= 1) return 1;
        if (n % 3 == 0) return prev[n - 1];
        natural prod = 1;
        for (std::size_t j = 1; j < n; ++j) prod *= prev[n - j];
        natural r = factorial(n) * power(prod, exponent);
        if (n % 3 == 2) r *= factorial(n + 1);
        return r;
    };
    auto factored = [exponent](std::size_t n, std::span<const prime_exponents> prev) -> prime_exponents {
        if (n <= 1) return {};
        if (n % 3 == 0) return prev[n - 1];
        prime_exponents prod;
        for (std::size_t j = 1; j < n; ++j) prod *= prev[n - j];
        prime_exponents r = prime_exponents::of_factorial(n) * prod.pow(exponent);
        if (n % 3 == 2) r *= prime_exponents::of_factorial(n + 1);
        return r;
    };
    return factorial_sequence("exceptional:" + std::to_string(exponent), values, factored);
}

/// Knuth-Wilf style factorial from a positive sequence C (1-indexed):
/// n -> n! C_1...C_n when forced, else n -> C_1...C_n (axiom 3 then rests on C).
inline factorial_sequence make_knuth_wilf(std::function<natural(std::size_t)> c, bool force_factorial_multiplier,
                                          std::string name = "knuth-wilf") {
    return factorial_sequence(std::move(name), [c = std::move(c), force_factorial_multiplier](
                                                    std::size_t n, std::span<const natural> prev) -> natural {
        if (n == 0) return 1;
        natural cn = c(n);
        if (cn <= 0) throw std::domain_error("knuth-wilf: C_" + std::to_string(n) + " is not positive");
        natural r = prev[n - 1] * cn;
        if (force_factorial_multiplier) r *= n;
        return r;
    });
}

/// Fibonacci numbers with F_1 = F_2 = 1.
inline natural fibonacci(std::size_t n) {
    natural r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

/// n! F_1 F_2 ... F_n
inline factorial_sequence fibonacci_factorial() {
    return make_knuth_wilf([](std::size_t n) { return fibonacci(n); }, true, "fibonacci");
}

/// (bn)! / b^n
inline factorial_sequence make_scaled_multiple(std::uint64_t b) {
    if (b == 0) throw std::invalid_argument("make_scaled_multiple: b must be >= 1");
    return factorial_sequence(
        "scaled-multiple:" + std::to_string(b),
        [b](std::size_t n, std::span<const natural>) -> natural { return factorial(b * n) / power(b, n); },
        [b](std::size_t n, std::span<const prime_exponents>) {
            return prime_exponents::of_factorial(b * n).exact_quotient(prime_exponents::of(b).pow(from_u64(n)));
        });
}

/// n -> n! q_n, where q_0 = 1 and q_i q_j | q_n whenever i + j = n (i, j >= 1).
/// The hypothesis is checked lazily at every index that gets computed;
/// a violation throws hypothesis_violation_error.
inline factorial_sequence make_qn_factorial(std::function<natural(std::size_t)> q, std::string name = "qn") {
    auto cache = std::make_shared<std::vector<natural>>();
    auto q_at = [q = std::move(q), cache](std::size_t n) -> const natural& {
        while (cache->size() <= n) {
            natural v = q(cache->size());
            if (v <= 0) throw std::domain_error("qn: q_" + std::to_string(cache->size()) + " is not positive");
            cache->push_back(std::move(v));
        }
        return (*cache)[n];
    };
    return factorial_sequence(std::move(name), [q_at](std::size_t n, std::span<const natural>) -> natural {
        if (n == 0) {
            if (q_at(0) != 1) throw hypothesis_violation_error(0, 0, 0);
            return 1;
        }
        const natural qn = q_at(n);
        for (std::size_t i = 1; 2 * i <= n; ++i)
            if (!divides(q_at(i) * q_at(n - i), qn)) throw hypothesis_violation_error(i, n - i, n);
        return factorial(n) * qn;
    });
}

/// True iff f(x+y, q) >= f(x, q) + f(y, q) for all x, y >= 1 with x + y <= N.
inline bool check_concave_exponent(const std::function<natural(std::uint64_t, std::uint64_t)>& f, std::uint64_t q,
                                   std::uint64_t N) {
    std::vector<natural> v(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) v[n] = f(n, q);
    for (std::uint64_t n = 2; n <= N; ++n)
        for (std::uint64_t x = 1; 2 * x <= n; ++x)
            if (v[n] < v[x] + v[n - x]) return false;
    return true;
}

/// (n!)^{qn}
inline factorial_sequence make_power_factorial(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("make_power_factorial: q must be >= 1");
    return factorial_sequence(
        "power:" + std::to_string(q),
        [q](std::size_t n, std::span<const natural>) { return power(factorial(n), q * n); },
        [q](std::size_t n, std::span<const prime_exponents>) {
            return prime_exponents::of_factorial(n).pow(from_u64(q * n));
        });
}

/// n -> q^n. Satisfies the first two axioms but not n! | n!_a.
inline factorial_sequence qpow_candidate(std::uint64_t q) {
    return factorial_sequence(
        "qpow:" + std::to_string(q), [q](std::size_t n, std::span<const natural>) { return power(q, n); },
        [q](std::size_t n, std::span<const prime_exponents>) {
            return prime_exponents::of(q).pow(from_u64(n));
        });
}

/// n -> 1 for every n; fails axiom 3 from n = 2 on.
inline factorial_sequence constant_one_candidate() {
    return factorial_sequence("constant-one", [](std::size_t, std::span<const natural>) { return natural(1); },
                              [](std::size_t, std::span<const prime_exponents>) { return prime_exponents{}; });
}

/// f(0) = f(1) = 1, f(n) = p_{n-1}! for n >= 2.
inline factorial_sequence prime_factorial_candidate() {
    return factorial_sequence(
        "prime-factorial",
        [](std::size_t n, std::span<const natural>) { return n < 2 ? natural(1) : factorial(nth_prime_u64(n - 1)); },
        [](std::size_t n, std::span<const prime_exponents>) {
            return n < 2 ? prime_exponents{} : prime_exponents::of_factorial(nth_prime_u64(n - 1));
        });
}

struct superadditivity_result {
    std::size_t checked_to = 0;
    /// First (n, k) with p_n < p_k + p_{n-k-1}, if any.
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
    /// Axiom sweep of n -> p_{n-1}! up to the binomial bound.
    axiom_report binomials;
};

/// Sweep p_n >= p_k + p_{n-k-1} for 1 <= k <= n-1, 2 <= n <= N (p_0 taken as
/// 1, matching f(1) = 1), and check the abstract binomials of p_{n-1}! up to
/// `binomial_bound`.
inline superadditivity_result prime_superadditivity_check(std::size_t N, std::size_t binomial_bound = 50) {
    if (N < 2) throw std::invalid_argument("prime_superadditivity_check: N must be >= 2");
    superadditivity_result r;
    r.checked_to = N;
    auto primes = first_primes(N);
    auto p = [&](std::size_t i) -> std::uint64_t { return i == 0 ? 1 : primes[i - 1]; };
    for (std::size_t n = 2; n <= N && !r.counterexample; ++n)
        for (std::size_t k = 1; k <= n - 1; ++k)
            if (p(n) < p(k) + p(n - k - 1)) {
                r.counterexample = {n, k};
                break;
            }
    r.binomials = verify_axioms(prime_factorial_candidate(), binomial_bound);
    return r;
}

}  // namespace afact
