#pragma once

// Factorial sets B_n = prod_{i<=n} |b_i|^{floor(n/i)} built from a primitive
// sequence b_1, b_2, ..., the inverse problem of recovering b from a factorial,
// and the named primitives.

#include "afact/arith.hpp"
#include "afact/bhargava.hpp"
#include "afact/errors.hpp"
#include "afact/factorial_sequence.hpp"
#include "afact/natural.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afact {

/// An ordered sequence of nonzero integers b_1, b_2, ... (1-indexed). Either
/// generated on demand or given as a finite list, which is padded with 1.
class primitive_sequence {
public:
    using generator = std::function<integer(std::size_t i)>;

    primitive_sequence(std::string name, generator g) : name_(std::move(name)), s_(std::make_shared<state>()) {
        if (!g) throw std::invalid_argument("primitive_sequence: empty generator");
        s_->gen = std::move(g);
    }

    /// A finite primitive; b_i = 1 beyond the listed terms.
    static primitive_sequence from_terms(std::string name, std::vector<integer> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i] == 0)
                throw std::invalid_argument("primitive_sequence: term b_" + std::to_string(i + 1) + " is zero");
        auto shared = std::make_shared<const std::vector<integer>>(std::move(terms));
        return primitive_sequence(std::move(name), [shared](std::size_t i) -> integer {
            return i <= shared->size() ? (*shared)[i - 1] : integer(1);
        });
    }

    const std::string& name() const noexcept { return name_; }

    /// b_i, i >= 1.
    integer term(std::size_t i) const {
        if (i == 0) throw std::out_of_range("primitive_sequence: terms are 1-indexed");
        std::lock_guard lock(s_->mutex);
        while (s_->terms.size() < i) {
            integer t = s_->gen(s_->terms.size() + 1);
            if (t == 0)
                throw std::invalid_argument(name_ + ": term b_" + std::to_string(s_->terms.size() + 1) + " is zero");
            s_->terms.push_back(std::move(t));
        }
        return s_->terms[i - 1];
    }

    /// |b_i|
    natural magnitude(std::size_t i) const { return abs_value(term(i)); }

    /// b_1 ... b_n
    std::vector<integer> terms_through(std::size_t n) const {
        std::vector<integer> out;
        out.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) out.push_back(term(i));
        return out;
    }

private:
    struct state {
        std::mutex mutex;
        generator gen;
        std::vector<integer> terms;
    };
    std::string name_;
    std::shared_ptr<state> s_;
};

/// B_n = prod_{i=1}^{n} |b_i|^{floor(n/i)}, straight from the closed form.
inline natural closed_form_element(const primitive_sequence& b, std::size_t n) {
    natural r = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        natural m = b.magnitude(i);
        if (m != 1) r *= power(m, n / i);
    }
    return r;
}

/// The factorial set of a primitive, memoized. Uses the recurrence
/// B_n = B_{n-1} prod_{i | n} |b_i|, which is the closed form unrolled.
class factorial_set {
public:
    explicit factorial_set(primitive_sequence b) : b_(std::move(b)), s_(std::make_shared<state>()) {
        s_->elements.push_back(1);
    }

    const primitive_sequence& primitive() const noexcept { return b_; }
    const std::string& name() const noexcept { return b_.name(); }

    natural element_at(std::size_t n) const {
        std::lock_guard lock(s_->mutex);
        extend(n);
        return s_->elements[n];
    }

    /// B_0 ... B_last
    std::vector<natural> elements_through(std::size_t last) const {
        std::lock_guard lock(s_->mutex);
        extend(last);
        return {s_->elements.begin(), s_->elements.begin() + static_cast<std::ptrdiff_t>(last + 1)};
    }

    /// n -> B_n as a candidate abstract factorial.
    factorial_sequence as_sequence() const {
        factorial_set self = *this;
        return factorial_sequence("fset:" + name(),
                                  [self](std::size_t n, std::span<const natural>) { return self.element_at(n); });
    }

private:
    struct state {
        std::mutex mutex;
        std::vector<natural> elements;
    };

    void extend(std::size_t n) const {
        auto& e = s_->elements;
        while (e.size() <= n) {
            std::size_t m = e.size();
            natural next = e.back();
            for (std::size_t i = 1; i * i <= m; ++i) {
                if (m % i) continue;
                next *= b_.magnitude(i);
                if (i != m / i) next *= b_.magnitude(m / i);
            }
            e.push_back(std::move(next));
        }
    }

    primitive_sequence b_;
    std::shared_ptr<state> s_;
};

/// B_0 ... B_N via the closed form.
inline std::vector<natural> build_closed_form(const primitive_sequence& b, std::size_t N) {
    std::vector<natural> out;
    out.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) out.push_back(closed_form_element(b, n));
    return out;
}

/// B_0 ... B_N by the defining construction: B_n is the smallest product
/// prod_{k<=n} |b_k|^{a_k} with every a_k >= 1 such that B_i B_j | B_n for all
/// i + j = n. Divisibility is taken formally, treating each b_k as its own
/// symbol, so repeated or non-coprime terms do not collapse. Exponents are
/// searched upward from 1 to `max_exponent`; running out throws
/// search_exhausted_error.
inline std::vector<natural> build_by_construction(const primitive_sequence& b, std::size_t N,
                                                  std::size_t max_exponent = 64) {
    if (N > 30) throw std::invalid_argument("build_by_construction: N must be <= 30");
    // alpha[n][k] for 1 <= k <= n; alpha[n][k] = 0 when k > n
    std::vector<std::vector<std::size_t>> alpha(N + 1, std::vector<std::size_t>(N + 1, 0));
    std::vector<natural> out{natural(1)};
    for (std::size_t n = 1; n <= N; ++n) {
        natural B = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            natural m = b.magnitude(k);
            std::size_t chosen = 0;
            if (m == 1) {
                chosen = 1;  // the exponent of a unit is unobservable
            } else {
                for (std::size_t e = 1; e <= max_exponent && !chosen; ++e) {
                    bool ok = true;
                    for (std::size_t i = 1; 2 * i <= n && ok; ++i)
                        ok = alpha[i][k] + alpha[n - i][k] <= e;
                    if (ok) chosen = e;
                }
                if (!chosen)
                    throw search_exhausted_error(std::to_string(max_exponent),
                                                 "build_by_construction: no exponent for b_" + std::to_string(k) +
                                                     " at n=" + std::to_string(n));
            }
            alpha[n][k] = chosen;
            if (m != 1) B *= power(m, chosen);
        }
        out.push_back(std::move(B));
    }
    return out;
}

struct binomial_exponent_result {
    std::vector<int> alpha;  // alpha[j-1] = alpha_j, j = 1..n
    natural quotient;        // B_n / (B_k B_{n-k}) = prod |b_j|^{alpha_j}
};

/// Exponent vector of B_n / (B_k B_{n-k}) over b_1..b_n. alpha_j is the carry
/// out of the units digit when k and n - k are added in base j, i.e.
/// [n mod j < k mod j]. Checked against exact division; a mismatch throws
/// consistency_error.
inline binomial_exponent_result binomial_exponents(const primitive_sequence& b, std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("binomial_exponents: need 0 <= k <= n");
    binomial_exponent_result r;
    r.quotient = 1;
    for (std::size_t j = 1; j <= n; ++j) {
        int a = (n % j < k % j) ? 1 : 0;
        std::size_t direct = n / j - k / j - (n - k) / j;
        if (direct != static_cast<std::size_t>(a))
            throw consistency_error("binomial_exponents: carry rule disagrees with floor differences");
        r.alpha.push_back(a);
        if (a) r.quotient *= b.magnitude(j);
    }
    natural Bn = closed_form_element(b, n);
    natural den = closed_form_element(b, k) * closed_form_element(b, n - k);
    if (!divides(den, Bn) || Bn / den != r.quotient)
        throw consistency_error("binomial_exponents: exact division disagrees at (" + std::to_string(n) + ", " +
                                std::to_string(k) + ")");
    return r;
}

struct self_factorial_result {
    bool ok = true;
    std::optional<std::size_t> first_failure;  // first n with n! not dividing B_n
};

/// Whether n! | B_n for 1 <= n <= N.
inline self_factorial_result is_self_factorial(const factorial_set& fs, std::size_t N) {
    auto B = fs.elements_through(N);
    natural f = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        f *= n;
        if (!divides(f, B[n])) return {false, n};
    }
    return {};
}

/// The factorial set whose primitive is B_1, B_2, ... of `fs`, with no check.
inline factorial_set factorial_set_of_elements(const factorial_set& fs) {
    factorial_set src = fs;
    return factorial_set(primitive_sequence("iterate(" + fs.name() + ")",
                                            [src](std::size_t i) -> integer { return src.element_at(i); }));
}

/// The factorial set whose primitive is B_1, B_2, ... of `fs`. Requires fs to
/// be self-factorial up to N; otherwise throws axiom_violation_error.
inline factorial_set iterate_factorial_set(const factorial_set& fs, std::size_t N) {
    auto check = is_self_factorial(fs, N);
    if (!check.ok)
        throw axiom_violation_error(*check.first_failure, fs.name() + " is not self-factorial: " +
                                                              std::to_string(*check.first_failure) +
                                                              "! does not divide B_" +
                                                              std::to_string(*check.first_failure));
    return factorial_set_of_elements(fs);
}

/// n -> n! B_1 B_2 ... B_{n+k} for n >= 1, and 0!_a = 1.
inline factorial_sequence offset_factorial(const factorial_set& fs, std::size_t k) {
    factorial_set src = fs;
    return factorial_sequence("offset:" + std::to_string(k) + ":" + fs.name(),
                              [src, k](std::size_t n, std::span<const natural>) {
                                  if (n == 0) return natural(1);
                                  natural r = factorial(n);
                                  for (std::size_t m = 1; m <= n + k; ++m) r *= src.element_at(m);
                                  return r;
                              });
}

struct primitive_recovery {
    std::vector<natural> terms;  // b_1, b_2, ... while integral

    struct failure_info {
        std::size_t n;
        rational value;
    };
    std::optional<failure_info> failure;

    bool ok() const noexcept { return !failure.has_value(); }
};

/// b_n = n!_a / prod_{i<n} b_i^{floor(n/i)} for n = 1..N, stopping at the
/// first non-integral quotient, which is returned exactly.
inline primitive_recovery recover_primitive(const factorial_sequence& seq, std::size_t N) {
    primitive_recovery r;
    if (N >= 1 && seq.value_at(1) < 1)
        throw std::invalid_argument("recover_primitive: 1!_a must be >= 1");
    for (std::size_t n = 1; n <= N; ++n) {
        natural den = 1;
        for (std::size_t i = 1; i < n; ++i)
            if (r.terms[i - 1] != 1) den *= power(r.terms[i - 1], n / i);
        natural num = seq.value_at(n);
        if (!divides(den, num)) {
            r.failure = primitive_recovery::failure_info{n, make_rational(num, den)};
            return r;
        }
        r.terms.push_back(num / den);
    }
    return r;
}

namespace detail {

// Primitive of the shifted Bhargava-prime factorial, recovered once and grown
// on demand; used to cross-check the closed form below.
inline natural recovered_bhargava_prime_primitive(std::size_t i) {
    static std::mutex mutex;
    static std::vector<prime_exponents> terms;  // terms[j-1] = b_j
    std::lock_guard lock(mutex);
    while (terms.size() < i) {
        std::size_t n = terms.size() + 1;
        prime_exponents den;
        for (std::size_t j = 1; j < n; ++j) den *= terms[j - 1].pow(from_u64(n / j));
        prime_exponents num = bhargava_primes_factored_at(n);
        if (!den.divides(num))
            throw consistency_error("bhargava prime primitive: recovery is not integral at n=" + std::to_string(n));
        terms.push_back(num.exact_quotient(den));
    }
    return terms[i - 1].value();
}

}  // namespace detail

/// Indices up to which bhargava_prime_primitive re-derives its answer by
/// primitive recovery.
inline constexpr std::size_t bhargava_primitive_crosscheck_limit = 512;

/// b_1 = 2; for i >= 2 the product of the primes p with i = p^m (p - 1) for
/// some m >= 0, or 1 if there are none.
inline natural bhargava_prime_primitive(std::size_t i) {
    if (i == 0) throw std::invalid_argument("bhargava_prime_primitive: i must be >= 1");
    natural r = 1;
    if (i == 1) {
        r = 2;
    } else {
        for (auto [p, m] : representations_pm(i)) r *= p;
    }
    if (i <= bhargava_primitive_crosscheck_limit && detail::recovered_bhargava_prime_primitive(i) != r)
        throw consistency_error("bhargava_prime_primitive: closed form disagrees with recovery at i=" +
                                std::to_string(i));
    return r;
}

// ---------------------------------------------------------------------------
// Named primitives
// ---------------------------------------------------------------------------

inline primitive_sequence primes_primitive() {
    return primitive_sequence("primes", [](std::size_t i) -> integer { return nth_prime(i); });
}

inline primitive_sequence integers_primitive() {
    return primitive_sequence("integers", [](std::size_t i) -> integer { return from_u64(i); });
}

inline primitive_sequence ones_primitive() {
    return primitive_sequence("ones", [](std::size_t) -> integer { return 1; });
}

inline primitive_sequence constant_primitive(std::int64_t q) {
    if (q == 0) throw std::invalid_argument("constant primitive: q must be nonzero");
    return primitive_sequence("constant:" + std::to_string(q), [q](std::size_t) -> integer { return integer(static_cast<long>(q)); });
}

/// b_i = q^i, giving B_n = q^{sum_{m<=n} sigma(m)}.
inline primitive_sequence powers_primitive(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("powers primitive: q must be nonzero");
    return primitive_sequence("powers:" + std::to_string(q), [q](std::size_t i) -> integer { return power(q, i); });
}

/// b_i = q^{i^2}, giving B_n = q^{sum_{m<=n} sigma_2(m)}.
inline primitive_sequence power_squares_primitive(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("power-squares primitive: q must be nonzero");
    return primitive_sequence("power-squares:" + std::to_string(q),
                              [q](std::size_t i) -> integer { return power(q, static_cast<std::uint64_t>(i) * i); });
}

/// b_n = e^{Lambda(n)}; its factorial set is n!.
inline primitive_sequence von_mangoldt_primitive() {
    return primitive_sequence("von-mangoldt", [](std::size_t i) -> integer { return von_mangoldt_exp(i); });
}

inline primitive_sequence bhargava_primes_primitive() {
    return primitive_sequence("bhargava-primes", [](std::size_t i) -> integer { return bhargava_prime_primitive(i); });
}

}  // namespace afact
