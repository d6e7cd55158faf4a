#pragma once

// Highly composite numbers: a divisor-count record scan (ground truth up to
// the sieve limit), a structured search over 2^a 3^b 5^c ... with
// non-increasing exponents for larger ranges, structure and exponent-bound
// checks, and the searches built on them.

#include "afact/arith.hpp"
#include "afact/errors.hpp"
#include "afact/factorial_set.hpp"
#include "afact/natural.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afact {

struct hcn_entry {
    natural n;
    natural d;
    bool operator==(const hcn_entry&) const = default;
};

struct hcn_list {
    natural limit;
    std::vector<hcn_entry> entries;  // ascending n, strictly increasing d
};

using u128 = unsigned __int128;

inline constexpr std::uint64_t default_hcn_sieve_limit = 100'000'000;

namespace detail {

/// Every n <= limit with d(n) larger than d(m) for all m < n, by a segmented
/// divisor-count sieve.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> hcn_record_scan(std::uint64_t limit) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    if (limit == 0) return out;
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    const auto primes = primes_up_to(root);

    constexpr std::uint64_t seg = 1u << 18;
    std::vector<std::uint32_t> d(seg);
    std::vector<std::uint64_t> found(seg);  // product of the prime powers located so far
    std::vector<std::uint8_t> e(seg);
    std::uint64_t best = 0;

    for (std::uint64_t lo = 1; lo <= limit; lo += seg) {
        std::uint64_t hi = std::min(limit, lo + seg - 1);
        std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        std::fill(d.begin(), d.begin() + len, 1u);
        std::fill(found.begin(), found.begin() + len, 1u);
        for (std::uint64_t p : primes) {
            if (p > hi / p) break;
            std::uint64_t first = (lo + p - 1) / p * p;
            if (first > hi) continue;
            for (std::uint64_t x = first; x <= hi; x += p) e[x - lo] = 1;
            for (std::uint64_t q = p * p; q <= hi; q *= p) {
                for (std::uint64_t x = (lo + q - 1) / q * q; x <= hi; x += q) ++e[x - lo];
                if (q > hi / p) break;
            }
            for (std::uint64_t x = first; x <= hi; x += p) {
                std::size_t i = x - lo;
                d[i] *= e[i] + 1u;
                std::uint64_t pp = p;
                for (unsigned j = 1; j < e[i]; ++j) pp *= p;
                found[i] *= pp;
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            std::uint64_t x = lo + i;
            std::uint64_t dx = found[i] == x ? d[i] : 2u * d[i];
            if (dx > best) {
                best = dx;
                out.emplace_back(x, dx);
            }
        }
    }
    return out;
}

inline const std::vector<std::uint64_t>& small_primes_for_search() {
    static const std::vector<std::uint64_t> ps = first_primes(40);
    return ps;
}

/// Calls visit(n, d) for every n <= limit of the form 2^{a_1} 3^{a_2} ... p_k^{a_k}
/// with a_1 >= a_2 >= ... >= a_k >= 1 (and for n = 1).
template <class Visit>
void for_each_ramanujan_form(u128 limit, Visit&& visit) {
    const auto& ps = small_primes_for_search();
    auto rec = [&](auto&& self, std::size_t idx, unsigned max_exp, u128 n, std::uint64_t d) -> void {
        visit(n, d);
        if (idx >= ps.size()) return;
        u128 p = ps[idx];
        u128 m = n;
        for (unsigned a = 1; a <= max_exp; ++a) {
            if (m > limit / p) break;
            m *= p;
            self(self, idx + 1, a, m, d * (a + 1));
        }
    };
    if (limit >= 1) rec(rec, 0, 200, 1, 1);
}

/// Record scan over the numbers of the above form. Every m has a number of
/// that form m' <= m with d(m') = d(m), so the records are exactly the hcn.
inline std::vector<std::pair<u128, std::uint64_t>> hcn_structured_search(u128 limit) {
    std::vector<std::pair<u128, std::uint64_t>> all;
    for_each_ramanujan_form(limit, [&](u128 n, std::uint64_t d) { all.emplace_back(n, d); });
    std::sort(all.begin(), all.end());
    std::vector<std::pair<u128, std::uint64_t>> out;
    std::uint64_t best = 0;
    for (auto [n, d] : all)
        if (d > best) {
            best = d;
            out.emplace_back(n, d);
        }
    return out;
}

inline const natural& max_structured_limit() {
    static const natural v = power(natural(10), 36);
    return v;
}

}  // namespace detail

/// Exponents (a_2, a_3, a_5, ...) of n over consecutive primes, when n has no
/// gap in its prime support; std::nullopt otherwise.
inline std::optional<std::vector<std::uint64_t>> consecutive_prime_exponents(const natural& n) {
    if (n < 1) throw std::invalid_argument("consecutive_prime_exponents: n must be positive");
    std::vector<std::uint64_t> exps;
    natural r = n;
    std::uint64_t p = 2;
    while (r > 1) {
        std::uint64_t a = 0;
        while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
            mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
            ++a;
        }
        if (a == 0) return std::nullopt;
        exps.push_back(a);
        natural z = from_u64(p);
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        p = to_u64(z);
    }
    return exps;
}

/// Exponents non-increasing over consecutive primes 2, 3, 5, ...
inline bool has_ramanujan_form(const natural& n) {
    auto e = consecutive_prime_exponents(n);
    if (!e) return false;
    for (std::size_t i = 1; i < e->size(); ++i)
        if ((*e)[i] > (*e)[i - 1]) return false;
    return true;
}

/// The factorization shape every hcn has: non-increasing exponents over
/// consecutive primes, ending in exponent 1 (4 and 36 are the exceptions).
inline bool check_hcn_structure(const natural& n) {
    if (!has_ramanujan_form(n)) return false;
    if (n == 1 || n == 4 || n == 36) return true;
    return consecutive_prime_exponents(n)->back() == 1;
}

struct ramanujan_bound_row {
    std::uint64_t prime;
    std::uint64_t exponent;
    std::uint64_t lower;  // floor(log p / log lambda), p the largest prime factor
    std::uint64_t upper;  // 2 floor(log P / log lambda), P the next prime after p
    bool ok;
};

struct ramanujan_bound_report {
    bool ok = true;
    std::vector<ramanujan_bound_row> rows;
};

namespace detail {

/// Largest t with b^t <= x.
inline std::uint64_t integer_log(std::uint64_t b, std::uint64_t x) {
    std::uint64_t t = 0;
    u128 v = b;
    while (v <= x) {
        ++t;
        v *= b;
    }
    return t;
}

}  // namespace detail

/// Check floor(log p / log l) <= a_l <= 2 floor(log P / log l) for every prime
/// l dividing n. n must have Ramanujan form.
inline ramanujan_bound_report ramanujan_exponent_bounds(const natural& n) {
    auto exps = consecutive_prime_exponents(n);
    if (!exps || !has_ramanujan_form(n))
        throw std::invalid_argument("ramanujan_exponent_bounds: " + to_string(n) +
                                    " is not a product of consecutive prime powers with non-increasing exponents");
    ramanujan_bound_report rep;
    if (exps->empty()) return rep;
    auto ps = first_primes(exps->size() + 1);
    std::uint64_t p = ps[exps->size() - 1];
    std::uint64_t P = ps[exps->size()];
    for (std::size_t i = 0; i < exps->size(); ++i) {
        ramanujan_bound_row row{ps[i], (*exps)[i], detail::integer_log(ps[i], p), 2 * detail::integer_log(ps[i], P),
                                false};
        row.ok = row.lower <= row.exponent && row.exponent <= row.upper;
        rep.ok = rep.ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

/// All hcn <= limit. Up to sieve_limit this is the divisor-count record scan;
/// beyond it the structured search (limit at most 10^36). Every entry is
/// checked against check_hcn_structure.
inline hcn_list hcn_up_to(const natural& limit, std::uint64_t sieve_limit = default_hcn_sieve_limit) {
    if (limit < 1) throw std::invalid_argument("hcn_up_to: limit must be >= 1");
    hcn_list out;
    out.limit = limit;
    if (limit <= from_u64(sieve_limit)) {
        for (auto [n, d] : detail::hcn_record_scan(to_u64(limit))) out.entries.push_back({from_u64(n), from_u64(d)});
    } else {
        if (limit > detail::max_structured_limit())
            throw search_exhausted_error("1e36", "hcn_up_to: limit too large for the structured search");
        for (auto [n, d] : detail::hcn_structured_search(to_u128(limit)))
            out.entries.push_back({from_u128(n), from_u64(d)});
    }
    for (const auto& e : out.entries)
        if (!check_hcn_structure(e.n))
            throw consistency_error("hcn_up_to: generated " + to_string(e.n) + " fails the structure check");
    return out;
}

/// Structured-search hcn list up to `limit`, cached per limit.
inline const std::vector<hcn_entry>& cached_structured_hcn(const natural& limit) {
    static std::mutex mutex;
    static std::map<std::string, std::vector<hcn_entry>> cache;
    std::lock_guard lock(mutex);
    auto key = to_string(limit);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<hcn_entry> v;
    for (auto [n, d] : detail::hcn_structured_search(to_u128(limit))) v.push_back({from_u128(n), from_u64(d)});
    return cache.emplace(key, std::move(v)).first->second;
}

/// Whether n is highly composite. Numbers without Ramanujan form are rejected
/// at once. Up to direct_limit the answer comes from comparing d(n) against
/// every smaller number of Ramanujan form; beyond it, a violated exponent
/// bound proves n is not hcn, and anything else throws search_exhausted_error.
inline bool is_highly_composite(const natural& n, const natural& direct_limit = power(natural(10), 30)) {
    if (n < 1) throw std::invalid_argument("is_highly_composite: n must be positive");
    if (n == 1) return true;
    if (!has_ramanujan_form(n)) return false;
    if (n <= direct_limit && n <= detail::max_structured_limit()) {
        std::uint64_t dn = 1;
        auto exps = consecutive_prime_exponents(n);
        for (auto a : *exps) dn *= a + 1;
        u128 below = to_u128(n) - 1;
        std::uint64_t best = 0;
        detail::for_each_ramanujan_form(below, [&](u128, std::uint64_t d) { best = std::max(best, d); });
        return dn > best;
    }
    if (!ramanujan_exponent_bounds(n).ok) return false;
    throw search_exhausted_error(to_string(direct_limit), "is_highly_composite: cannot decide " + to_string(n));
}

/// The smallest hcn N with m! | N, searched through hcn lists of growing range
/// up to max_limit (at most 10^36).
inline natural find_hcn_with_factorial_divisor(std::uint64_t m,
                                               const natural& max_limit = power(natural(10), 36)) {
    if (m < 1) throw std::invalid_argument("find_hcn_with_factorial_divisor: m must be >= 1");
    natural f = factorial(m);
    for (unsigned exp10 = 12;; exp10 += 6) {
        natural lim = power(natural(10), exp10);
        bool last = lim >= max_limit || lim >= detail::max_structured_limit();
        if (last) lim = std::min(max_limit, detail::max_structured_limit());
        for (const auto& e : cached_structured_hcn(lim))
            if (divides(f, e.n)) return e.n;
        if (last) break;
    }
    throw search_exhausted_error(to_string(std::min(max_limit, detail::max_structured_limit())),
                                 "find_hcn_with_factorial_divisor: no hcn divisible by " + std::to_string(m) + "!");
}

/// h_1, ..., h_N with h_n the smallest hcn divisible by n!.
inline std::vector<natural> build_h_sequence(std::size_t N) {
    if (N < 1) throw std::invalid_argument("build_h_sequence: N must be >= 1");
    std::vector<natural> out;
    for (std::size_t n = 1; n <= N; ++n) out.push_back(find_hcn_with_factorial_divisor(n));
    return out;
}

/// h_1 ... h_K as a finite primitive (b_i = 1 beyond K).
inline primitive_sequence h_sequence_prefix_primitive(std::size_t K) {
    auto h = build_h_sequence(K);
    std::vector<integer> terms(h.begin(), h.end());
    return primitive_sequence::from_terms("h-sequence:" + std::to_string(K), std::move(terms));
}

struct prime_set_hcn_record {
    std::vector<natural> B;         // B_1 ... B_30 of the prime factorial set
    std::vector<bool> is_hcn;       // is_hcn[n-1] for B_n
    std::optional<std::size_t> first_bound_failure;  // first n with n > 2 floor(log2 p_{n+1})
    bool first_six_hcn = false;
    bool rest_not_hcn = false;
    bool ok() const { return first_six_hcn && rest_not_hcn && first_bound_failure == 9; }
};

/// Which of B_1..B_30 (primitive = primes) are hcn, and where the exponent of
/// 2 first outgrows the bound forced on an hcn.
inline prime_set_hcn_record hcn_prefix_of_prime_factorial_set() {
    prime_set_hcn_record r;
    factorial_set fs(primes_primitive());
    auto ps = first_primes(31);
    for (std::size_t n = 1; n <= 30; ++n) {
        r.B.push_back(fs.element_at(n));
        r.is_hcn.push_back(is_highly_composite(r.B.back()));
        if (!r.first_bound_failure && n > 2 * detail::integer_log(2, ps[n])) r.first_bound_failure = n;
    }
    r.first_six_hcn = std::all_of(r.is_hcn.begin(), r.is_hcn.begin() + 6, [](bool b) { return b; });
    r.rest_not_hcn = std::none_of(r.is_hcn.begin() + 6, r.is_hcn.end(), [](bool b) { return b; });
    return r;
}

}  // namespace afact
