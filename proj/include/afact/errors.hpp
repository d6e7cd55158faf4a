#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace afact {

/// A generalized binomial coefficient (or consecutive ratio) that is not an integer.
class non_integral_error : public std::domain_error {
public:
    non_integral_error(std::size_t n, std::size_t k, const std::string& what)
        : std::domain_error(what), n_(n), k_(k) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }

private:
    std::size_t n_;
    std::size_t k_;
};

/// A bounded search ran out of room before finding what it was asked for.
class search_exhausted_error : public std::runtime_error {
public:
    search_exhausted_error(std::string limit, const std::string& what)
        : std::runtime_error(what + " (limit " + limit + ")"), limit_(std::move(limit)) {}

    const std::string& limit() const noexcept { return limit_; }

private:
    std::string limit_;
};

/// Two routes that must agree did not. Always an implementation bug.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The input is not an abstract factorial (or not self-factorial) where the
/// operation needs it to be.
class axiom_violation_error : public std::domain_error {
public:
    axiom_violation_error(std::size_t n, const std::string& what)
        : std::domain_error(what), n_(n) {}

    std::size_t index() const noexcept { return n_; }

private:
    std::size_t n_;
};

/// q_i q_j does not divide q_n for some i + j = n.
class hypothesis_violation_error : public std::domain_error {
public:
    hypothesis_violation_error(std::size_t i, std::size_t j, std::size_t n)
        : std::domain_error("q_" + std::to_string(i) + " * q_" + std::to_string(j) +
                            " does not divide q_" + std::to_string(n)),
          i_(i), j_(j), n_(n) {}

    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }
    std::size_t n() const noexcept { return n_; }

private:
    std::size_t i_, j_, n_;
};

}  // namespace afact
