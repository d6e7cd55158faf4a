#pragma once

// Big-number vocabulary shared by every module. Values are GMP integers; the
// helpers below keep call sites free of raw mpz_* calls.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afact {

/// Unbounded non-negative integer. Operations in this library never produce
/// a negative Natural; signed values use `integer`.
using natural = mpz_class;
/// Signed unbounded integer (primitive-sequence terms may be negative).
using integer = mpz_class;
/// Exact fraction, always kept in canonical (reduced, positive denominator) form.
using rational = mpq_class;

inline natural factorial(std::uint64_t n) {
    natural r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline natural power(const natural& base, std::uint64_t exp) {
    natural r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline natural power(std::uint64_t base, std::uint64_t exp) {
    natural r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline natural binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    natural r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// d | n, with the convention that only 0 is divisible by 0.
inline bool divides(const natural& d, const natural& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline natural abs_value(const integer& x) { return abs(x); }

inline rational make_rational(const natural& num, const natural& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const natural& x) { return x.get_str(10); }

inline std::string to_string(const rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str(10);
    return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

/// Parse an optionally signed decimal integer. Throws std::invalid_argument.
inline integer parse_integer(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    s = s.substr(start);
    std::size_t digits = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == digits) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    for (std::size_t i = digits; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    if (s[0] == '+') s.erase(0, 1);
    return integer(s, 10);
}

/// Narrowing with a range check; used where an index must fit a machine word.
inline std::uint64_t to_u64(const natural& x) {
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
        throw std::out_of_range("value does not fit in 64 bits: " + to_string(x));
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, x.get_mpz_t());
    return r;
}

inline natural from_u64(std::uint64_t v) {
    natural r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

inline natural from_u128(unsigned __int128 v) {
    natural r;
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
    mpz_import(r.get_mpz_t(), 2, -1, sizeof limbs[0], 0, 0, limbs);
    return r;
}

inline unsigned __int128 to_u128(const natural& x) {
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 128)
        throw std::out_of_range("value does not fit in 128 bits: " + to_string(x));
    std::uint64_t limbs[2] = {0, 0};
    mpz_export(limbs, nullptr, -1, sizeof limbs[0], 0, 0, x.get_mpz_t());
    return (static_cast<unsigned __int128>(limbs[1]) << 64) | limbs[0];
}

}  // namespace afact
