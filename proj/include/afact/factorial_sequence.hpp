#pragma once

#include "afact/arith.hpp"
#include "afact/errors.hpp"
#include "afact/natural.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afact {

/// A named candidate abstract factorial n -> n!_a, n = 0, 1, 2, ...
///
/// Values are produced by a rule that sees every earlier value, so recursive
/// definitions cost one rule call per index. Results are memoized in a table
/// shared by all copies of the sequence and guarded by a mutex; concurrent
/// reads are safe.
///
/// A sequence may also carry an exact prime-exponent rule. When present it
/// must describe the same integers as the value rule; it lets divisibility
/// checks run at indices whose values are too large to write down.
class factorial_sequence {
public:
    using value_rule = std::function<natural(std::size_t n, std::span<const natural> earlier)>;
    using factored_rule =
        std::function<prime_exponents(std::size_t n, std::span<const prime_exponents> earlier)>;

    factorial_sequence(std::string name, value_rule values, factored_rule factored = {})
        : name_(std::move(name)), s_(std::make_shared<state>()) {
        if (!values) throw std::invalid_argument("factorial_sequence: empty value rule");
        s_->values_rule = std::move(values);
        s_->factored_fn = std::move(factored);
    }

    const std::string& name() const noexcept { return name_; }

    natural value_at(std::size_t n) const {
        std::lock_guard lock(s_->mutex);
        extend_values(n);
        return s_->values[n];
    }

    /// Values at 0..last.
    std::vector<natural> values_through(std::size_t last) const {
        std::lock_guard lock(s_->mutex);
        extend_values(last);
        return {s_->values.begin(), s_->values.begin() + static_cast<std::ptrdiff_t>(last + 1)};
    }

    bool has_factored() const noexcept { return static_cast<bool>(s_->factored_fn); }

    prime_exponents factored_at(std::size_t n) const {
        std::lock_guard lock(s_->mutex);
        extend_factored(n);
        return s_->factored[n];
    }

    std::vector<prime_exponents> factored_through(std::size_t last) const {
        std::lock_guard lock(s_->mutex);
        extend_factored(last);
        return {s_->factored.begin(), s_->factored.begin() + static_cast<std::ptrdiff_t>(last + 1)};
    }

    /// h_n = n!_a / n!. Throws axiom_violation_error when n! does not divide n!_a.
    natural h(std::size_t n) const {
        natural v = value_at(n);
        natural f = factorial(n);
        if (!divides(f, v))
            throw axiom_violation_error(n, name_ + ": " + std::to_string(n) + "! does not divide the value");
        return v / f;
    }

private:
    struct state {
        std::mutex mutex;
        value_rule values_rule;
        factored_rule factored_fn;
        std::vector<natural> values;
        std::vector<prime_exponents> factored;
    };

    void extend_values(std::size_t n) const {
        auto& v = s_->values;
        while (v.size() <= n) {
            natural next = s_->values_rule(v.size(), std::span<const natural>(v));
            if (next <= 0)
                throw std::domain_error(name_ + ": non-positive value at n=" + std::to_string(v.size()));
            v.push_back(std::move(next));
        }
    }

    void extend_factored(std::size_t n) const {
        if (!s_->factored_fn) throw std::logic_error(name_ + ": no factored representation");
        auto& v = s_->factored;
        while (v.size() <= n) v.push_back(s_->factored_fn(v.size(), std::span<const prime_exponents>(v)));
    }

    std::string name_;
    std::shared_ptr<state> s_;
};

}  // namespace afact
