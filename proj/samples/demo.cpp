// A short tour: a factorial set, its series, a Bhargava factorial and an hcn query.

#include "afact/bhargava.hpp"
#include "afact/factorial_set.hpp"
#include "afact/hcn.hpp"
#include "afact/series.hpp"

#include <iostream>

int main() {
    using namespace afact;

    factorial_set primes(primes_primitive());
    std::cout << "B_n over the primes:";
    for (std::size_t n = 1; n <= 8; ++n) std::cout << ' ' << primes.element_at(n);
    std::cout << '\n';

    auto s = evaluate_set_power_series(primes, 1, parse_tolerance("1e-7"), true);
    std::cout << "1 + sum 1/B_n = " << s.decimal << " (" << s.terms_used << " terms)\n";

    auto cubes = bhargava_factorials_finite({0, 1, 8, 27, 64, 125, 216, 343});
    std::cout << "cubes: 3!_X = " << cubes[3] << ", 4!_X = " << cubes[4] << '\n';

    auto e = evaluate_e_a(bhargava_primes_factorial(), parse_tolerance("1e-9"));
    std::cout << "e_a for the Bhargava prime factorial = " << e.decimal << '\n';

    for (std::uint64_t m = 1; m <= 8; ++m)
        std::cout << "smallest hcn divisible by " << m << "! = " << find_hcn_with_factorial_divisor(m) << '\n';

    auto r = recover_primitive(make_scaled_multiple(2), 10);
    if (r.failure) std::cout << "(2n)!/2^n has no primitive: b_" << r.failure->n << " = " << r.failure->value << '\n';
}
