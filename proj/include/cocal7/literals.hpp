#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cocal7/exterior.hpp"

namespace cocal7 {

/// Syntax error with the 0-based character position in the input.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

namespace detail {

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos); }

    Rational rational() {
        skip_ws();
        std::size_t start = pos;
        auto digits = [&] {
            std::size_t s = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            return pos > s;
        };
        if (!digits()) fail("expected number");
        std::size_t mid = pos;
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            if (!digits()) fail("expected denominator");
        }
        auto r = parse_rational(text.substr(start, pos - start));
        if (!r) throw ParseError("zero denominator", mid);
        return *r;
    }

    bool digit_ahead() {
        char c = peek();
        return c >= '0' && c <= '9';
    }
};

// One parsed term: signed rational coefficient on a (possibly unsorted)
// index group; groups come from e^{...} braces, which may hold compact sums
// like e^{14+35}. A term with no group is a bare scalar.
struct RawTerm {
    Rational coefficient;
    std::vector<int> indices;
    bool has_basis = false;
    std::size_t position = 0;
};

/// Parses a signed sum of `c*e^{...}` terms up to (not consuming) any char in
/// `stop`. Shared by the generic form literal and structure-equation parsers.
inline std::vector<RawTerm> sum_of_terms(Scanner& sc, std::string_view stop) {
    std::vector<RawTerm> terms;
    bool first = true;
    for (;;) {
        sc.skip_ws();
        if (sc.at_end() || stop.find(sc.peek()) != std::string_view::npos) break;
        Rational sign = 1;
        if (sc.accept('-')) {
            sign = -1;
        } else if (sc.accept('+')) {
            // explicit plus
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }
        std::size_t term_pos = sc.pos;
        Rational coefficient = 1;
        bool have_coefficient = false;
        if (sc.digit_ahead()) {
            coefficient = sc.rational();
            have_coefficient = true;
            if (sc.accept('*')) {
                // coefficient times basis form
            } else if (sc.peek() != 'e' && sc.peek() != 'E') {
                // bare scalar term
                RawTerm t;
                t.coefficient = sign * coefficient;
                t.position = term_pos;
                terms.push_back(std::move(t));
                first = false;
                continue;
            }
        }
        if (sc.peek() != 'e') {
            if (have_coefficient) {
                RawTerm t;
                t.coefficient = sign * coefficient;
                t.position = term_pos;
                terms.push_back(std::move(t));
                first = false;
                continue;
            }
            sc.fail("expected term");
        }
        ++sc.pos;  // 'e'
        sc.expect('^', "'^'");
        sc.expect('{', "'{'");
        // brace content: digits groups separated by '+'/'-'
        Rational group_sign = 1;
        for (;;) {
            sc.skip_ws();
            std::vector<int> indices;
            std::size_t group_pos = sc.pos;
            while (sc.digit_ahead()) {
                char c = sc.text[sc.pos++];
                if (c == '0') throw ParseError("frame index 0 is invalid", sc.pos - 1);
                indices.push_back(c - '0');
            }
            if (indices.empty()) sc.fail("expected frame indices");
            RawTerm t;
            t.coefficient = sign * coefficient * group_sign;
            t.indices = std::move(indices);
            t.has_basis = true;
            t.position = group_pos;
            terms.push_back(std::move(t));
            if (sc.accept('+')) {
                group_sign = 1;
            } else if (sc.accept('-')) {
                group_sign = -1;
            } else {
                break;
            }
        }
        sc.expect('}', "'}'");
        first = false;
    }
    if (first) sc.fail("expected at least one term");
    return terms;
}

/// Builds a form from raw terms. Degree comes from the first basis group;
/// nonzero bare scalars are only legal when the whole literal is scalar.
inline ExteriorForm build_form(const std::vector<RawTerm>& terms, int n, std::size_t base_pos) {
    int degree = -1;
    for (const auto& t : terms) {
        if (t.has_basis) {
            if (degree < 0) degree = static_cast<int>(t.indices.size());
            if (static_cast<int>(t.indices.size()) != degree)
                throw ParseError("mixed degrees in form literal", t.position);
        }
    }
    if (degree < 0) {
        // all bare scalars
        Rational total = 0;
        for (const auto& t : terms) total += t.coefficient;
        ExteriorForm f(n, 0);
        if (total != 0) f.add_term(IndexTuple{}, total);
        return f;
    }
    ExteriorForm f(n, degree);
    for (const auto& t : terms) {
        if (!t.has_basis) {
            if (t.coefficient != 0) throw ParseError("scalar term in non-scalar form", t.position);
            continue;
        }
        for (int i : t.indices)
            if (i > n) throw ParseError("frame index " + std::to_string(i) + " exceeds dimension " + std::to_string(n),
                                        t.position);
        auto [tuple, sign] = IndexTuple::canonicalized(t.indices);
        if (sign == 0) continue;  // repeated index, term vanishes
        f.add_term(tuple, sign > 0 ? t.coefficient : -t.coefficient);
    }
    (void)base_pos;
    return f;
}

}  // namespace detail

/// Parses a form literal over an n-dimensional frame:
/// signed sum of `c*e^{i...}` terms, `c` a rational like `3/2` (omitted = 1),
/// e.g. `e^{12}+e^{34}-1/2*e^{56}`. `0` is the zero form. Unsorted indices
/// are canonicalized with the permutation sign.
inline ExteriorForm parse_form(std::string_view text, int n) {
    detail::Scanner sc{text};
    auto terms = detail::sum_of_terms(sc, "");
    if (!sc.at_end()) sc.fail("unexpected trailing input");
    return detail::build_form(terms, n, 0);
}

/// Canonical literal: lexicographic term order, `-` folded into coefficients.
inline std::string to_literal(const ExteriorForm& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [index, c] : a.terms()) {
        Rational abs = c < 0 ? Rational(-c) : c;
        if (c < 0)
            out += '-';
        else if (!first)
            out += '+';
        if (index.empty()) {
            out += to_string(abs);
        } else {
            if (abs != 1) {
                out += to_string(abs);
                out += '*';
            }
            out += "e^{" + index.digits() + "}";
        }
        first = false;
    }
    return out;
}

/// Parses a vector literal: signed sum of `c*E_i` terms, e.g. `2*E_1-E_3`;
/// `0` is the zero vector.
inline Vector parse_vector(std::string_view text, int n) {
    detail::Scanner sc{text};
    Vector v = Vector::zero(n);
    bool first = true;
    for (;;) {
        sc.skip_ws();
        if (sc.at_end()) break;
        Rational sign = 1;
        if (sc.accept('-')) {
            sign = -1;
        } else if (sc.accept('+')) {
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }
        Rational coefficient = 1;
        bool have_coefficient = false;
        if (sc.digit_ahead()) {
            coefficient = sc.rational();
            have_coefficient = true;
            sc.accept('*');
        }
        if (sc.peek() == 'E') {
            ++sc.pos;
            sc.expect('_', "'_'");
            sc.skip_ws();
            if (!sc.digit_ahead()) sc.fail("expected frame index");
            char c = sc.text[sc.pos++];
            int i = c - '0';
            if (i < 1 || i > n)
                throw ParseError("frame index " + std::to_string(i) + " exceeds dimension " + std::to_string(n),
                                 sc.pos - 1);
            v[i] += sign * coefficient;
        } else if (have_coefficient) {
            if (coefficient != 0) sc.fail("scalar term in vector literal");
        } else {
            sc.fail("expected E_i term");
        }
        first = false;
    }
    if (first) sc.fail("expected at least one term");
    return v;
}

inline std::string to_literal(const Vector& v) {
    if (v.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = 1; i <= v.n; ++i) {
        const Rational& c = v[i];
        if (c == 0) continue;
        Rational abs = c < 0 ? Rational(-c) : c;
        if (c < 0)
            out += '-';
        else if (!first)
            out += '+';
        if (abs != 1) {
            out += to_string(abs);
            out += '*';
        }
        out += "E_" + std::to_string(i);
        first = false;
    }
    return out;
}

}  // namespace cocal7
