#pragma once

#include "afact/natural.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace afact {

/// OEIS b-file lines "n value", starting at index `first`.
inline void write_bfile(std::ostream& out, const std::vector<natural>& values, std::size_t first = 1) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (first + i) << ' ' << to_string(values[i]) << '\n';
}

/// Integers from text with one per line. Blank lines and lines starting with
/// '#' are skipped.
inline std::vector<integer> read_integers(std::istream& in, const std::string& source = "input") {
    std::vector<integer> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        try {
            out.push_back(parse_integer(line));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(source + ":" + std::to_string(lineno) + ": not an integer: '" + line + "'");
        }
    }
    return out;
}

inline std::vector<integer> read_integers_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_integers(in, path);
}

/// "1,2,-3" -> {1, 2, -3}
inline std::vector<integer> parse_integer_list(std::string_view text) {
    std::vector<integer> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

}  // namespace afact
