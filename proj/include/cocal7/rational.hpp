#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace cocal7 {

/// Exact rational scalar. Always canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "7", "-3", "3/2", "-1/2". Returns nullopt on malformed input or
/// zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
    std::size_t pos = 0;
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') out += text[pos++];
        return pos > start;
    };
    std::string num;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) num += text[pos++];
    if (!digits(num)) return std::nullopt;
    BigInt n(num);
    BigInt d(1);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string den;
        if (!digits(den)) return std::nullopt;
        d = BigInt(den);
    }
    if (pos != text.size() || d == 0) return std::nullopt;
    return Rational(n, d);
}

}  // namespace cocal7
