#pragma once

// String names for sequences and primitives, shared by the CLI, the tests and
// the README.
//
// Sequences:  ordinary, two-power, fibonacci, bhargava-primes,
//             bhargava-primes-shifted, bhargava-qpow:q, exceptional:e,
//             scaled-multiple:b, power:q, knuth-wilf:FILE, qn-bessel,
//             qn-binomial:q, prime-factorial, qpow:q, constant-one,
//             fset:PRIMITIVE, offset:k:PRIMITIVE
// Primitives: primes, integers, ones, constant:q, powers:q, power-squares:q,
//             von-mangoldt, bhargava-primes, h-sequence:K, or a file path

#include "afact/bhargava.hpp"
#include "afact/factorial_core.hpp"
#include "afact/factorial_set.hpp"
#include "afact/hcn.hpp"
#include "afact/io.hpp"
#include "afact/series.hpp"

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace afact {

namespace detail {

inline std::uint64_t parse_parameter(const std::string& name, const std::string& text) {
    integer v = parse_integer(text);
    if (v < 0) throw std::invalid_argument(name + ": parameter must be non-negative");
    return to_u64(v);
}

// "head:rest" -> {head, rest}; rest empty when there is no colon
inline std::pair<std::string, std::string> split_name(const std::string& name) {
    auto colon = name.find(':');
    if (colon == std::string::npos) return {name, ""};
    return {name.substr(0, colon), name.substr(colon + 1)};
}

}  // namespace detail

inline primitive_sequence make_named_primitive(const std::string& name) {
    auto [head, arg] = detail::split_name(name);
    if (name == "primes") return primes_primitive();
    if (name == "integers") return integers_primitive();
    if (name == "ones") return ones_primitive();
    if (name == "von-mangoldt") return von_mangoldt_primitive();
    if (name == "bhargava-primes") return bhargava_primes_primitive();
    if (head == "constant" && !arg.empty()) return constant_primitive(parse_integer(arg).get_si());
    if (head == "powers" && !arg.empty()) return powers_primitive(detail::parse_parameter(name, arg));
    if (head == "power-squares" && !arg.empty()) return power_squares_primitive(detail::parse_parameter(name, arg));
    if (head == "h-sequence" && !arg.empty()) return h_sequence_prefix_primitive(detail::parse_parameter(name, arg));
    if (std::filesystem::is_regular_file(name)) return primitive_sequence::from_terms(name, read_integers_file(name));
    throw std::invalid_argument("unknown primitive '" + name + "'");
}

inline factorial_sequence make_named_sequence(const std::string& name) {
    auto [head, arg] = detail::split_name(name);
    if (name == "ordinary") return ordinary_factorial();
    if (name == "two-power") return two_power_factorial();
    if (name == "fibonacci") return fibonacci_factorial();
    if (name == "bhargava-primes") return bhargava_primes_factorial();
    if (name == "bhargava-primes-shifted") return bhargava_primes_shifted_factorial();
    if (name == "qn-bessel") return bessel_qn_factorial();
    if (name == "prime-factorial") return prime_factorial_candidate();
    if (name == "constant-one") return constant_one_candidate();
    if (!arg.empty()) {
        if (head == "exceptional") return exceptional_factorial(static_cast<unsigned>(detail::parse_parameter(name, arg)));
        if (head == "scaled-multiple") return make_scaled_multiple(detail::parse_parameter(name, arg));
        if (head == "power") return make_power_factorial(detail::parse_parameter(name, arg));
        if (head == "qpow") return qpow_candidate(detail::parse_parameter(name, arg));
        if (head == "bhargava-qpow") return bhargava_qpow_factorial(detail::parse_parameter(name, arg));
        if (head == "qn-binomial") {
            std::uint64_t q = detail::parse_parameter(name, arg);
            if (q == 0) throw std::invalid_argument(name + ": q must be >= 1");
            return make_qn_factorial(
                [q](std::size_t n) { return power(q, to_u64(binomial_coefficient(n + q - 1, q))); }, name);
        }
        if (head == "knuth-wilf") {
            auto c = std::make_shared<const std::vector<integer>>(read_integers_file(arg));
            return make_knuth_wilf(
                [c, arg](std::size_t n) -> natural {
                    if (n > c->size())
                        throw std::out_of_range("knuth-wilf: " + arg + " has only " + std::to_string(c->size()) +
                                                " terms");
                    return (*c)[n - 1];
                },
                true, name);
        }
        if (head == "fset") return factorial_set(make_named_primitive(arg)).as_sequence();
        if (head == "offset") {
            auto [k, prim] = detail::split_name(arg);
            if (prim.empty()) throw std::invalid_argument("offset needs the form offset:k:PRIMITIVE");
            return offset_factorial(factorial_set(make_named_primitive(prim)), detail::parse_parameter(name, k));
        }
    }
    throw std::invalid_argument("unknown sequence '" + name + "'");
}

}  // namespace afact
