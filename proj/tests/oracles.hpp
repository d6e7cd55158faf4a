#pragma once

// Deliberately naive reference implementations. They share nothing with the
// library beyond GMP integers and are only fast enough for the test bounds.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t nth_prime(std::uint64_t n) {
    std::uint64_t c = 1;
    while (n) {
        ++c;
        if (is_prime(c)) --n;
    }
    return c;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

inline mpz_class sigma(unsigned k, std::uint64_t n) {
    mpz_class s = 0;
    for (auto d : divisors(n)) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        s += t;
    }
    return s;
}

inline mpz_class fact(std::uint64_t n) {
    mpz_class r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
    return r;
}

inline mpz_class pow(const mpz_class& b, std::uint64_t e) {
    mpz_class r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= b;
    return r;
}

/// p if n = p^m (m >= 1), else 1.
inline std::uint64_t von_mangoldt_exp(std::uint64_t n) {
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (!is_prime(p)) continue;
        std::uint64_t m = n;
        while (m % p == 0) m /= p;
        if (m == 1) return p;
        if (n % p == 0) return 1;
    }
    return 1;
}

/// prod_{i<=n} b_i^{floor(n/i)}, b given 1-indexed via a callback.
inline mpz_class factorial_set_element(const std::function<mpz_class(std::size_t)>& b, std::size_t n) {
    mpz_class r = 1;
    for (std::size_t i = 1; i <= n; ++i) r *= pow(abs(b(i)), n / i);
    return r;
}

/// Exponent of p in n.
inline std::uint64_t valuation(mpz_class n, std::uint64_t p) {
    std::uint64_t v = 0;
    while (n != 0 && n % static_cast<unsigned long>(p) == 0) {
        n /= static_cast<unsigned long>(p);
        ++v;
    }
    return v;
}

/// nu_k(X, p) for all k by exhaustive search over orderings starting at X[a0]:
/// the lexicographically smallest sequence of step valuations. Only for |X| <= 8.
inline std::vector<std::uint64_t> nu_exponents_bruteforce(std::vector<std::int64_t> X, std::uint64_t p, std::size_t a0) {
    std::swap(X[0], X[a0]);
    std::sort(X.begin() + 1, X.end());
    std::vector<std::uint64_t> best;
    do {
        std::vector<std::uint64_t> seq{0};
        for (std::size_t k = 1; k < X.size(); ++k) {
            std::uint64_t v = 0;
            for (std::size_t i = 0; i < k; ++i) v += valuation(mpz_class(static_cast<long>(X[k] - X[i])), p);
            seq.push_back(v);
        }
        // the p-ordering is the greedy one; greedy equals lexicographic minimum
        if (best.empty() || seq < best) best = seq;
    } while (std::next_permutation(X.begin() + 1, X.end()));
    return best;
}

/// Naive divisor count.
inline std::uint64_t d(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 1; i * i <= n; ++i)
        if (n % i == 0) c += (i * i == n) ? 1 : 2;
    return c;
}

/// Highly composite numbers <= limit by a plain record scan.
inline std::vector<std::uint64_t> hcn_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    std::uint64_t best = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        auto dn = d(n);
        if (dn > best) {
            best = dn;
            out.push_back(n);
        }
    }
    return out;
}

/// Deterministic generator for property tests.
class gen {
public:
    explicit gen(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }
    std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    /// Distinct integers in [lo, hi].
    std::vector<std::int64_t> distinct_set(std::size_t size, std::int64_t lo, std::int64_t hi) {
        std::vector<std::int64_t> out;
        while (out.size() < size) {
            auto x = uniform_signed(lo, hi);
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
