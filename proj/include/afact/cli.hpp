#pragma once

// Command-line front end. run() is kept separate from main() so the tests can
// drive it with captured streams.
//
// Exit codes: 0 success, 1 a mathematical failure reported as data (axiom
// failure, primitive recovery failure, exhausted search), 2 usage error.

#include "afact/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace afact::cli {

using json = nlohmann::ordered_json;

namespace detail {

struct options {
    std::size_t to = 0;
    std::string format = "plain";
    std::string seq;
    std::string primitive;
    std::string tol = "1e-8";
    unsigned power = 1;
    std::string limit = "10000";
    std::uint64_t sieve_limit = default_hcn_sieve_limit;
    bool alternating = false;
    bool leading_one = false;
    bool exact = false;
    bool bessel = false;
    bool prime_factorial = false;
    std::string set;
    std::string set_file;
    std::string closed_form;
    std::uint64_t prime = 0;
    std::size_t a0 = 0;
    std::uint64_t factorial_divisor = 0;
    std::size_t h_sequence = 0;
    std::string check;
    std::string fn;
    std::uint64_t n = 0;
};

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline json to_json(const series_estimate& e, const std::string& tol) {
    return json{{"value", e.decimal},
                {"tolerance", tol},
                {"terms", e.terms_used},
                {"lower", to_string(e.lower)},
                {"upper", to_string(e.upper)}};
}

inline std::string axiom_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& v) {
    std::string s;
    for (auto [n, k] : v) s += (s.empty() ? "" : " ") + std::string("(") + std::to_string(n) + "," + std::to_string(k) + ")";
    return s;
}

inline void print_values(std::ostream& out, const std::string& format, const std::string& name,
                         const std::vector<natural>& values, std::size_t first) {
    if (format == "bfile") {
        // b-files are 1-indexed
        if (first == 0 && !values.empty())
            write_bfile(out, std::vector<natural>(values.begin() + 1, values.end()), 1);
        else
            write_bfile(out, values, first);
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(to_string(v));
        emit_json(out, json{{"name", name}, {"first_index", first}, {"values", arr}});
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) out << (first + i) << ' ' << to_string(values[i]) << '\n';
    }
}

inline int cmd_seq(const options& o, std::ostream& out) {
    auto seq = make_named_sequence(o.seq);
    print_values(out, o.format, seq.name(), seq.values_through(o.to), 0);
    return 0;
}

inline int cmd_verify(const options& o, std::ostream& out) {
    auto seq = make_named_sequence(o.seq);
    auto r = verify_axioms(seq, o.to);
    if (o.format == "json") {
        json a2 = json::array();
        for (auto [n, k] : r.axiom2_failures) a2.push_back(json::array({n, k}));
        emit_json(out, json{{"name", seq.name()},
                            {"checked_to", r.checked_to},
                            {"passed", r.passed()},
                            {"axiom1_ok", r.axiom1_ok},
                            {"axiom2_failures", a2},
                            {"axiom3_failures", r.axiom3_failures}});
    } else {
        out << (r.passed() ? "PASS " : "FAIL ") << seq.name() << " checked_to=" << r.checked_to << '\n';
        if (!r.axiom1_ok) out << "axiom1: 0!_a != 1\n";
        if (!r.axiom2_failures.empty()) out << "axiom2: " << axiom_pairs(r.axiom2_failures) << '\n';
        if (!r.axiom3_failures.empty()) {
            out << "axiom3:";
            for (auto n : r.axiom3_failures) out << ' ' << n;
            out << '\n';
        }
    }
    return r.passed() ? 0 : 1;
}

inline int cmd_fset(const options& o, std::ostream& out) {
    factorial_set fs(make_named_primitive(o.primitive));
    auto B = fs.elements_through(o.to);
    B.erase(B.begin());
    if (o.power != 1)
        for (auto& b : B) b = afact::power(b, o.power);
    print_values(out, o.format, fs.name(), B, 1);
    return 0;
}

inline int cmd_primitive(const options& o, std::ostream& out) {
    auto seq = make_named_sequence(o.seq);
    auto r = recover_primitive(seq, o.to);
    if (o.format == "json") {
        json terms = json::array();
        for (const auto& t : r.terms) terms.push_back(to_string(t));
        json j{{"name", seq.name()}, {"terms", terms}};
        if (r.failure) j["failure"] = json{{"n", r.failure->n}, {"value", to_string(r.failure->value)}};
        emit_json(out, j);
    } else {
        write_bfile(out, r.terms, 1);
        if (r.failure) out << "FAIL n=" << r.failure->n << " value=" << to_string(r.failure->value) << '\n';
    }
    return r.ok() ? 0 : 1;
}

inline std::vector<std::int64_t> finite_set(const options& o) {
    std::vector<integer> raw = o.set_file.empty() ? parse_integer_list(o.set) : read_integers_file(o.set_file);
    std::vector<std::int64_t> X;
    for (const auto& x : raw) {
        if (!x.fits_slong_p()) throw std::invalid_argument("set element out of range: " + to_string(x));
        X.push_back(x.get_si());
    }
    return X;
}

inline int cmd_bhargava(const options& o, std::ostream& out) {
    if (!o.closed_form.empty()) {
        factorial_sequence seq = o.closed_form == "primes"           ? bhargava_primes_factorial()
                                 : o.closed_form == "primes-shifted" ? bhargava_primes_shifted_factorial()
                                 : o.closed_form.rfind("qpow:", 0) == 0
                                     ? bhargava_qpow_factorial(afact::detail::parse_parameter(o.closed_form, o.closed_form.substr(5)))
                                     : throw std::invalid_argument("unknown closed form '" + o.closed_form + "'");
        auto v = seq.values_through(o.to);
        print_values(out, o.format, seq.name(), v, 0);
        return 0;
    }
    if (o.set.empty() && o.set_file.empty())
        throw std::invalid_argument("bhargava: give --set, --set-file or --closed-form");
    auto X = finite_set(o);
    if (o.prime) {
        auto po = p_ordering(X, o.prime, o.a0);
        if (o.format == "json") {
            json nu = json::array();
            for (const auto& v : po.nu) nu.push_back(to_string(v));
            emit_json(out, json{{"p", po.p}, {"order", po.order}, {"nu", nu}});
        } else {
            out << "order";
            for (auto a : po.order) out << ' ' << a;
            out << "\nnu";
            for (const auto& v : po.nu) out << ' ' << to_string(v);
            out << '\n';
        }
        return 0;
    }
    print_values(out, o.format, "bhargava-set", bhargava_factorials_finite(X), 0);
    return 0;
}

inline int cmd_hcn(const options& o, std::ostream& out) {
    if (o.factorial_divisor) {
        natural N = find_hcn_with_factorial_divisor(o.factorial_divisor);
        if (o.format == "json")
            emit_json(out, json{{"m", o.factorial_divisor}, {"hcn", to_string(N)}});
        else
            out << to_string(N) << '\n';
        return 0;
    }
    if (o.h_sequence) {
        print_values(out, o.format, "h-sequence", build_h_sequence(o.h_sequence), 1);
        return 0;
    }
    if (!o.check.empty()) {
        natural N = parse_integer(o.check);
        if (N < 1) throw std::invalid_argument("--check needs a positive integer");
        bool hcn = is_highly_composite(N);
        if (o.format == "json") {
            json j{{"n", to_string(N)}, {"hcn", hcn}, {"structure_ok", check_hcn_structure(N)}};
            emit_json(out, j);
        } else {
            out << to_string(N) << (hcn ? " is" : " is not") << " highly composite\n";
        }
        return 0;
    }
    auto list = hcn_up_to(parse_integer(o.limit), o.sieve_limit);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& e : list.entries) arr.push_back(json{{"n", to_string(e.n)}, {"d", to_string(e.d)}});
        emit_json(out, json{{"limit", to_string(list.limit)}, {"hcn", arr}});
    } else if (o.format == "bfile") {
        std::vector<natural> v;
        for (const auto& e : list.entries) v.push_back(e.n);
        write_bfile(out, v, 1);
    } else {
        for (const auto& e : list.entries) out << to_string(e.n) << ' ' << to_string(e.d) << '\n';
    }
    return 0;
}

inline int cmd_series(const options& o, std::ostream& out) {
    rational tol = parse_tolerance(o.tol);
    series_estimate e;
    if (o.bessel) {
        e = evaluate_bessel_example(tol);
    } else if (o.prime_factorial) {
        e = evaluate_prime_factorial_series(tol);
    } else if (!o.primitive.empty()) {
        e = evaluate_set_power_series(factorial_set(make_named_primitive(o.primitive)), o.power, tol, o.leading_one);
    } else if (!o.seq.empty()) {
        auto seq = make_named_sequence(o.seq);
        e = o.alternating ? evaluate_alternating(seq, tol) : evaluate_e_a(seq, tol);
    } else {
        throw std::invalid_argument("series: give --seq, --primitive, --bessel or --prime-factorial");
    }
    if (o.format == "json") {
        emit_json(out, to_json(e, o.tol));
    } else {
        out << e.decimal << " \xC2\xB1 " << o.tol << '\n';
        out << "terms " << e.terms_used << '\n';
        if (o.exact) out << "lower " << to_string(e.lower) << "\nupper " << to_string(e.upper) << '\n';
    }
    return 0;
}

inline natural arith_value(const std::string& fn, std::uint64_t n, std::string& text) {
    auto [head, arg] = afact::detail::split_name(fn);
    auto param = [&] { return static_cast<unsigned>(afact::detail::parse_parameter(fn, arg)); };
    if (fn == "d") return divisor_count(n);
    if (head == "sigma" && !arg.empty()) return divisor_power_sum(param(), n);
    if (head == "summatory-sigma" && !arg.empty()) return summatory_sigma(param(), n);
    if (fn == "von-mangoldt") return von_mangoldt_exp(n);
    if (fn == "cumulative-divisor-product") return cumulative_divisor_product(n);
    if (head == "legendre" && !arg.empty()) return from_u64(legendre_valuation(n, afact::detail::parse_parameter(fn, arg)));
    if (fn == "nth-prime") return nth_prime(n);
    if (fn == "representations-pm") {
        auto reps = representations_pm(n);
        for (auto [p, m] : reps) text += (text.empty() ? "" : " ") + std::to_string(p) + "^" + std::to_string(m);
        return reps.size();
    }
    throw std::invalid_argument("unknown arithmetic function '" + fn + "'");
}

inline int cmd_arith(const options& o, std::ostream& out) {
    std::uint64_t from = o.n ? o.n : 1;
    std::uint64_t to = o.n ? o.n : o.to;
    if (to < 1) throw std::invalid_argument("arith: give --n or --to");
    json rows = json::array();
    for (std::uint64_t n = from; n <= to; ++n) {
        std::string text;
        natural v = arith_value(o.fn, n, text);
        std::string shown = text.empty() && o.fn != "representations-pm" ? to_string(v) : text;
        if (o.format == "json")
            rows.push_back(json{{"n", n}, {"value", shown}});
        else
            out << n << ' ' << shown << '\n';
    }
    if (o.format == "json") emit_json(out, json{{"fn", o.fn}, {"values", rows}});
    return 0;
}

}  // namespace detail

/// Parse `args` (program name first) and execute.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abstract factorials: sequences, axioms, factorial sets, Bhargava factorials, hcn and series"};
    app.require_subcommand(1);
    detail::options o;
    auto format = [&](CLI::App* sc) {
        sc->add_option("--format", o.format, "plain, json or bfile")->check(CLI::IsMember({"plain", "json", "bfile"}));
    };

    auto* seq = app.add_subcommand("seq", "values n!_a of a named sequence for n = 0..N");
    seq->add_option("--seq", o.seq, "sequence name")->required();
    seq->add_option("--to", o.to, "last index")->default_val(10);
    format(seq);

    auto* verify = app.add_subcommand("verify", "check the abstract-factorial axioms up to N");
    verify->add_option("--seq", o.seq, "sequence name")->required();
    verify->add_option("--to", o.to, "bound N")->default_val(60);
    format(verify);

    auto* fset = app.add_subcommand("fset", "factorial set B_1..B_N of a primitive");
    fset->add_option("--primitive", o.primitive, "primitive name or file")->required();
    fset->add_option("--to", o.to, "last index")->default_val(10);
    fset->add_option("--power", o.power, "print B_n^k")->default_val(1)->check(CLI::PositiveNumber);
    format(fset);

    auto* prim = app.add_subcommand("primitive", "recover the primitive b_1..b_N of a sequence");
    prim->add_option("--seq", o.seq, "sequence name")->required();
    prim->add_option("--to", o.to, "last index")->default_val(20);
    format(prim);

    auto* bh = app.add_subcommand("bhargava", "Bhargava factorials of a finite set or a closed form");
    bh->add_option("--set", o.set, "comma-separated distinct integers");
    bh->add_option("--set-file", o.set_file, "file with one integer per line");
    bh->add_option("--closed-form", o.closed_form, "primes, primes-shifted or qpow:q");
    bh->add_option("--prime", o.prime, "print the p-ordering for this prime");
    bh->add_option("--a0", o.a0, "index of the starting element")->default_val(0);
    bh->add_option("--to", o.to, "last index for closed forms")->default_val(10);
    format(bh);

    auto* hcn = app.add_subcommand("hcn", "highly composite numbers");
    hcn->add_option("--limit", o.limit, "list all hcn up to this bound")->default_val("10000");
    hcn->add_option("--sieve-limit", o.sieve_limit, "largest bound handled by the record scan");
    hcn->add_option("--factorial", o.factorial_divisor, "smallest hcn divisible by m!");
    hcn->add_option("--h-sequence", o.h_sequence, "h_1..h_N");
    hcn->add_option("--check", o.check, "decide whether a number is hcn");
    format(hcn);

    auto* series = app.add_subcommand("series", "enclosure of a reciprocal-factorial series");
    series->add_option("--seq", o.seq, "sum 1/n!_a");
    series->add_option("--primitive", o.primitive, "sum 1/B_n^k over a factorial set");
    series->add_option("--power", o.power, "k for --primitive")->default_val(1)->check(CLI::PositiveNumber);
    series->add_flag("--leading-one", o.leading_one, "include the B_0 = 1 term");
    series->add_flag("--alternating", o.alternating, "alternate signs (with --seq)");
    series->add_flag("--bessel", o.bessel, "sum 2^{floor(n/2)}/n!^2");
    series->add_flag("--prime-factorial", o.prime_factorial, "sum 1/p_n!");
    series->add_flag("--exact", o.exact, "print the exact enclosure");
    series->add_option("--tol", o.tol, "tolerance, rational or decimal")->default_val("1e-8");
    format(series);

    auto* arith = app.add_subcommand("arith", "arithmetic functions");
    arith->add_option("--fn", o.fn,
                      "d, sigma:k, summatory-sigma:k, von-mangoldt, cumulative-divisor-product, legendre:p, "
                      "nth-prime, representations-pm")
        ->required();
    arith->add_option("--n", o.n, "single argument");
    arith->add_option("--to", o.to, "tabulate 1..N");
    format(arith);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*seq) return detail::cmd_seq(o, out);
        if (*verify) return detail::cmd_verify(o, out);
        if (*fset) return detail::cmd_fset(o, out);
        if (*prim) return detail::cmd_primitive(o, out);
        if (*bh) return detail::cmd_bhargava(o, out);
        if (*hcn) return detail::cmd_hcn(o, out);
        if (*series) return detail::cmd_series(o, out);
        if (*arith) return detail::cmd_arith(o, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace afact::cli
