#pragma once

// Prime sieves, factorization and the classical arithmetic functions
// (d, sigma_k, Lambda, Legendre valuations) used by every other module.

#include "afact/errors.hpp"
#include "afact/natural.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afact {

struct prime_power {
    std::uint64_t p;
    unsigned e;
    bool operator==(const prime_power&) const = default;
};

/// Ascending prime powers; empty for n = 1.
using factorization = std::vector<prime_power>;

/// All primes up to `limit`, by the sieve of Eratosthenes. Immutable once built.
class prime_table {
public:
    explicit prime_table(std::uint64_t limit) : limit_(limit) {
        if (limit < 2) return;
        std::vector<bool> composite(limit + 1, false);
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            primes_.push_back(i);
            if (i <= limit / i)
                for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    std::uint64_t operator[](std::size_t i) const { return primes_.at(i); }

    bool contains(std::uint64_t n) const {
        if (n > limit_) throw std::out_of_range("prime_table: query beyond sieve limit");
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

/// Smallest-prime-factor sieve; factorizes n <= limit in O(log n) and larger
/// n by trial division.
class arithmetic_table {
public:
    explicit arithmetic_table(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0), primes_(limit) {
        for (std::uint64_t p : primes_.primes())
            for (std::uint64_t j = p; j <= limit_; j += p)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(p);
    }

    std::uint32_t limit() const noexcept { return limit_; }
    const prime_table& primes() const noexcept { return primes_; }

    factorization factorize(std::uint64_t n) const {
        if (n == 0) throw std::invalid_argument("factorize: n must be positive");
        factorization f;
        if (n <= limit_) {
            while (n > 1) {
                std::uint64_t p = spf_[n];
                unsigned e = 0;
                while (n % p == 0) { n /= p; ++e; }
                f.push_back({p, e});
            }
            return f;
        }
        auto take = [&](std::uint64_t p) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            if (e) f.push_back({p, e});
        };
        for (std::uint64_t p : primes_.primes()) {
            if (p > n / p) break;
            take(p);
        }
        // beyond the sieve: continue with odd candidates
        for (std::uint64_t c = (primes_.size() ? primes_.primes().back() + 2 : 3) | 1; c <= n / c; c += 2)
            take(c);
        if (n > 1) f.push_back({n, 1});
        return f;
    }

    bool is_prime(std::uint64_t n) const {
        if (n <= limit_) return n >= 2 && spf_[n] == n;
        natural z = from_u64(n);
        return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
    }

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    prime_table primes_;
};

/// Process-wide table (limit 2^20) built on first use.
inline const arithmetic_table& default_table() {
    static const arithmetic_table table(1u << 20);
    return table;
}

inline factorization factorize(std::uint64_t n) { return default_table().factorize(n); }
inline bool is_prime(std::uint64_t n) { return default_table().is_prime(n); }

namespace detail {
inline void require_positive(std::uint64_t n, const char* fn) {
    if (n == 0) throw std::invalid_argument(std::string(fn) + ": n must be >= 1");
}
}  // namespace detail

/// d(n), the number of positive divisors.
inline natural divisor_count(std::uint64_t n) {
    detail::require_positive(n, "divisor_count");
    std::uint64_t d = 1;
    for (auto [p, e] : factorize(n)) d *= e + 1;
    return from_u64(d);
}

/// sigma_k(n), the sum of the k-th powers of the divisors; sigma_0 = d.
inline natural divisor_power_sum(unsigned k, std::uint64_t n) {
    detail::require_positive(n, "divisor_power_sum");
    if (k == 0) return divisor_count(n);
    natural r = 1;
    for (auto [p, e] : factorize(n)) {
        natural pk = power(p, k);
        r *= (power(pk, e + 1) - 1) / (pk - 1);
    }
    return r;
}

namespace detail {

// (k+1) log2 n + log2(1 + ln n) bits bound both sides of the Hermite identity.
inline bool hermite_fits_u128(unsigned k, std::uint64_t n) {
    double bits = (k + 1.0) * std::log2(static_cast<double>(n) + 1.0) +
                  std::log2(2.0 + std::log(static_cast<double>(n) + 1.0));
    return bits < 120.0;
}

inline unsigned __int128 ipow128(std::uint64_t b, unsigned k) {
    unsigned __int128 r = 1;
    while (k--) r *= b;
    return r;
}

}  // namespace detail

/// Sum_{i<=n} sigma_k(i) summed term by term.
inline natural sigma_prefix_sum_direct(unsigned k, std::uint64_t n) {
    detail::require_positive(n, "summatory_sigma");
    if (detail::hermite_fits_u128(k, n)) {
        unsigned __int128 acc = 0;
        for (std::uint64_t i = 1; i <= n; ++i) {
            unsigned __int128 s = 1;
            for (auto [p, e] : factorize(i)) {
                unsigned __int128 pk = detail::ipow128(p, k), term = 1, sum = 1;
                for (unsigned j = 0; j < e; ++j) { term *= pk; sum += term; }
                s *= sum;
            }
            acc += s;
        }
        return from_u128(acc);
    }
    natural acc = 0;
    for (std::uint64_t i = 1; i <= n; ++i) acc += divisor_power_sum(k, i);
    return acc;
}

/// Sum_{i<=n} i^k floor(n/i): the Hermite form of the same quantity.
inline natural sigma_prefix_sum_hermite(unsigned k, std::uint64_t n) {
    detail::require_positive(n, "summatory_sigma");
    if (detail::hermite_fits_u128(k, n)) {
        unsigned __int128 acc = 0;
        for (std::uint64_t i = 1; i <= n; ++i) acc += detail::ipow128(i, k) * (n / i);
        return from_u128(acc);
    }
    natural acc = 0;
    for (std::uint64_t i = 1; i <= n; ++i) acc += power(i, k) * from_u64(n / i);
    return acc;
}

/// Sum_{i=1}^n sigma_k(i), computed both ways; throws consistency_error if the
/// Hermite identity fails.
inline natural summatory_sigma(unsigned k, std::uint64_t n) {
    natural direct = sigma_prefix_sum_direct(k, n);
    natural hermite = sigma_prefix_sum_hermite(k, n);
    if (direct != hermite)
        throw consistency_error("Hermite identity failed at k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
    return direct;
}

/// e^{Lambda(n)}: p when n = p^m (m >= 1), otherwise 1.
inline natural von_mangoldt_exp(std::uint64_t n) {
    detail::require_positive(n, "von_mangoldt_exp");
    auto f = factorize(n);
    return f.size() == 1 ? from_u64(f.front().p) : natural(1);
}

namespace detail {

// Multiplies many word-sized factors, batching them before touching GMP.
class word_product {
public:
    void mul(std::uint64_t x) {
        if (x == 1) return;
        if (pending_ > UINT64_MAX / x) flush();
        pending_ *= x;
    }
    natural take() {
        flush();
        return std::move(acc_);
    }

private:
    void flush() {
        if (pending_ != 1) acc_ *= from_u64(pending_);
        pending_ = 1;
    }
    natural acc_ = 1;
    std::uint64_t pending_ = 1;
};

}  // namespace detail

/// prod_{i<=n} i^{floor(n/i)}
inline natural cumulative_product_by_floor_powers(std::uint64_t n) {
    natural r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= power(i, n / i);
    return r;
}

/// prod_{k<=n} floor(n/k)!
inline natural cumulative_product_by_factorials(std::uint64_t n) {
    natural r = 1;
    for (std::uint64_t k = 1; k <= n; ++k) r *= factorial(n / k);
    return r;
}

/// Product of every divisor of every m <= n, listed one by one.
inline natural cumulative_product_by_divisors(std::uint64_t n) {
    detail::word_product acc;
    for (std::uint64_t m = 1; m <= n; ++m)
        for (std::uint64_t d = 1; d <= m / d; ++d)
            if (m % d == 0) {
                acc.mul(d);
                if (d != m / d) acc.mul(m / d);
            }
    return acc.take();
}

/// alpha(n), the cumulative product of all divisors of 1..n, by three routes
/// that must agree.
inline natural cumulative_divisor_product(std::uint64_t n) {
    detail::require_positive(n, "cumulative_divisor_product");
    natural a = cumulative_product_by_floor_powers(n);
    natural b = cumulative_product_by_factorials(n);
    natural c = cumulative_product_by_divisors(n);
    if (a != b || a != c)
        throw consistency_error("cumulative divisor product routes disagree at n=" + std::to_string(n));
    return a;
}

/// Exponent of the prime p in n!.
inline std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("legendre_valuation: " + std::to_string(p) + " is not prime");
    std::uint64_t v = 0;
    for (std::uint64_t q = n / p; q > 0; q /= p) v += q;
    return v;
}

struct pm_representation {
    std::uint64_t p;
    unsigned m;
    bool operator==(const pm_representation&) const = default;
};

/// Every (p, m) with n = p^m (p - 1), p prime, ascending in p. At most two exist.
inline std::vector<pm_representation> representations_pm(std::uint64_t n) {
    detail::require_positive(n, "representations_pm");
    // p - 1 must divide n, so walk the divisors of n
    std::vector<std::uint64_t> divisors{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = divisors.size();
        std::uint64_t pe = 1;
        for (unsigned j = 0; j < e; ++j) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    std::vector<pm_representation> out;
    for (std::uint64_t d : divisors) {
        std::uint64_t p = d + 1;
        if (!is_prime(p)) continue;
        std::uint64_t r = n / d;
        unsigned m = 0;
        while (r % p == 0) { r /= p; ++m; }
        if (r == 1) out.push_back({p, m});
    }
    if (out.size() > 2)
        throw consistency_error("more than two representations n = p^m(p-1) for n=" + std::to_string(n));
    return out;
}

/// The n-th prime, p_1 = 2.
inline std::uint64_t nth_prime_u64(std::uint64_t n) {
    detail::require_positive(n, "nth_prime");
    const auto& small = default_table().primes();
    if (n <= small.size()) return small[n - 1];
    double x = static_cast<double>(n);
    auto bound = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 10;
    prime_table big(bound);
    return big[n - 1];
}

inline natural nth_prime(std::uint64_t n) { return from_u64(nth_prime_u64(n)); }

/// First n primes, ascending.
inline std::vector<std::uint64_t> first_primes(std::size_t n) {
    if (n == 0) return {};
    const auto& small = default_table().primes();
    if (n <= small.size()) return {small.primes().begin(), small.primes().begin() + n};
    std::uint64_t last = nth_prime_u64(n);
    prime_table big(last);
    return {big.primes().begin(), big.primes().begin() + n};
}

/// Primes p <= limit, ascending.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    const auto& small = default_table().primes();
    if (limit <= small.limit()) {
        auto ps = small.primes();
        auto end = std::upper_bound(ps.begin(), ps.end(), limit);
        return {ps.begin(), end};
    }
    prime_table big(limit);
    return {big.primes().begin(), big.primes().end()};
}

/// Exact exponent vector over primes. Represents values far too large to
/// materialize (exponents are themselves unbounded).
class prime_exponents {
public:
    prime_exponents() = default;

    static prime_exponents of(std::uint64_t n) {
        detail::require_positive(n, "prime_exponents::of");
        prime_exponents r;
        for (auto [p, e] : factorize(n)) r.e_[p] = e;
        return r;
    }

    static prime_exponents of_prime_power(std::uint64_t p, const natural& e) {
        prime_exponents r;
        if (e != 0) r.e_[p] = e;
        return r;
    }

    /// n! via Legendre's formula.
    static prime_exponents of_factorial(std::uint64_t n) {
        prime_exponents r;
        if (n < 2) return r;
        auto fill = [&](const prime_table& pt) {
            for (std::uint64_t p : pt.primes()) {
                if (p > n) break;
                std::uint64_t v = 0;
                for (std::uint64_t q = n / p; q > 0; q /= p) v += q;
                r.e_[p] = from_u64(v);
            }
        };
        if (n <= default_table().limit())
            fill(default_table().primes());
        else
            fill(prime_table(n));
        return r;
    }

    const std::map<std::uint64_t, natural>& exponents() const noexcept { return e_; }

    natural exponent(std::uint64_t p) const {
        auto it = e_.find(p);
        return it == e_.end() ? natural(0) : it->second;
    }

    bool is_one() const noexcept { return e_.empty(); }

    prime_exponents& operator*=(const prime_exponents& o) {
        for (const auto& [p, e] : o.e_) e_[p] += e;
        return *this;
    }

    friend prime_exponents operator*(prime_exponents a, const prime_exponents& b) { return a *= b; }

    prime_exponents pow(const natural& k) const {
        prime_exponents r;
        if (k == 0) return r;
        for (const auto& [p, e] : e_) r.e_[p] = e * k;
        return r;
    }

    /// *this | n
    bool divides(const prime_exponents& n) const {
        for (const auto& [p, e] : e_)
            if (n.exponent(p) < e) return false;
        return true;
    }

    /// *this / d; throws std::domain_error when d does not divide *this.
    prime_exponents exact_quotient(const prime_exponents& d) const {
        if (!d.divides(*this)) throw std::domain_error("prime_exponents: inexact division");
        prime_exponents r = *this;
        for (const auto& [p, e] : d.e_) {
            auto it = r.e_.find(p);
            it->second -= e;
            if (it->second == 0) r.e_.erase(it);
        }
        return r;
    }

    /// The integer itself. Throws std::out_of_range if an exponent exceeds 64 bits.
    natural value() const {
        natural r = 1;
        for (const auto& [p, e] : e_) r *= power(p, to_u64(e));
        return r;
    }

    bool operator==(const prime_exponents& o) const { return e_ == o.e_; }

private:
    std::map<std::uint64_t, natural> e_;
};

inline bool divides(const prime_exponents& d, const prime_exponents& n) { return d.divides(n); }

}  // namespace afact
