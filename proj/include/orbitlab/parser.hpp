#pragma once

// Textual polynomial grammar used by configs:
//
//   forms   := poly ( '|' poly )*
//   poly    := [ '+' | '-' ] term ( ( '+' | '-' ) term )*
//   term    := factor ( '*' factor )*
//   factor  := primary [ '^' digits ]
//   primary := digits | 's' | 't' | 'x' digits | '(' poly ')'
//
// Variables are either s, t (two variables) or x0..xN; the two styles may
// not be mixed. Whitespace is ignored between tokens.

#include "orbitlab/error.hpp"
#include "orbitlab/form.hpp"
#include "orbitlab/integer.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitlab {

namespace detail {

// Sparse polynomial keyed by exponent vectors of growing arity.
using SparsePoly = std::map<Monomial, Integer>;

inline Monomial padded(const Monomial& m, std::size_t n) {
    Monomial r = m;
    r.resize(n, 0);
    return r;
}

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    std::vector<SparsePoly> parse_forms() {
        std::vector<SparsePoly> out;
        out.push_back(parse_poly());
        skip_ws();
        while (peek() == '|') {
            ++pos_;
            out.push_back(parse_poly());
            skip_ws();
        }
        if (pos_ != text_.size()) fail("unexpected character");
        return out;
    }

    std::size_t max_var() const { return max_var_; }
    bool used_st() const { return style_ == Style::ST; }
    bool used_vars() const { return style_ != Style::None; }

private:
    enum class Style { None, ST, X };

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static SparsePoly add(const SparsePoly& a, const SparsePoly& b, int sign) {
        std::size_t n = 0;
        for (const auto& [m, c] : a) n = std::max(n, m.size());
        for (const auto& [m, c] : b) n = std::max(n, m.size());
        SparsePoly r;
        for (const auto& [m, c] : a) r[padded(m, n)] += c;
        for (const auto& [m, c] : b) r[padded(m, n)] += sign > 0 ? c : Integer(-c);
        std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
        return r;
    }

    static SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
        std::size_t n = 0;
        for (const auto& [m, c] : a) n = std::max(n, m.size());
        for (const auto& [m, c] : b) n = std::max(n, m.size());
        SparsePoly r;
        for (const auto& [ma, ca] : a) {
            Monomial pa = padded(ma, n);
            for (const auto& [mb, cb] : b) {
                Monomial pb = padded(mb, n);
                for (std::size_t i = 0; i < n; ++i) pb[i] += pa[i];
                r[pb] += ca * cb;
            }
        }
        std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
        return r;
    }

    SparsePoly parse_poly() {
        SparsePoly acc;
        int sign = 1;
        char c = peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++pos_;
        }
        acc = add(acc, parse_term(), sign);
        for (;;) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            acc = add(acc, parse_term(), c == '-' ? -1 : 1);
        }
        return acc;
    }

    SparsePoly parse_term() {
        SparsePoly acc = parse_factor();
        while (peek() == '*') {
            ++pos_;
            acc = mul(acc, parse_factor());
        }
        return acc;
    }

    SparsePoly parse_factor() {
        SparsePoly base = parse_primary();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("exponent must be a nonnegative integer");
            std::string digits = read_digits();
            if (digits.size() > 4) fail("exponent too large");
            unsigned e = static_cast<unsigned>(std::stoul(digits));
            SparsePoly r{{Monomial{}, Integer(1)}};
            for (unsigned i = 0; i < e; ++i) r = mul(r, base);
            return r;
        }
        return base;
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    SparsePoly variable(std::size_t k) {
        max_var_ = std::max(max_var_, k);
        Monomial m(k + 1, 0);
        m[k] = 1;
        return SparsePoly{{m, Integer(1)}};
    }

    void set_style(Style s) {
        if (style_ != Style::None && style_ != s) fail("cannot mix s,t with x0..xN");
        style_ = s;
    }

    SparsePoly parse_primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v(read_digits());
            if (v == 0) return {};
            return SparsePoly{{Monomial{}, v}};
        }
        if (c == 's' || c == 't') {
            set_style(Style::ST);
            ++pos_;
            return variable(c == 's' ? 0 : 1);
        }
        if (c == 'x') {
            set_style(Style::X);
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("variable x needs an index");
            std::string digits = read_digits();
            if (digits.size() > 4) fail("variable index too large");
            return variable(std::stoul(digits));
        }
        if (c == '(') {
            ++pos_;
            SparsePoly inner = parse_poly();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;
    Style style_ = Style::None;
};

} // namespace detail

/// Parses '|'-separated homogeneous forms. The number of variables is
/// `nvars` when given, 2 for the s,t style, and otherwise the number of forms
/// (a self-map of P^N has N+1 forms in N+1 variables).
/// Throws ParseError on syntax errors, Validation on inhomogeneous forms.
inline std::vector<Form> parse_forms(std::string_view text, std::optional<std::size_t> nvars = std::nullopt) {
    detail::PolyParser parser(text);
    auto polys = parser.parse_forms();
    std::size_t n = nvars ? *nvars : (parser.used_st() ? 2 : polys.size());
    if (parser.used_st() && n != 2) throw Error(ErrorKind::Validation, "s,t variables describe P^1 only");
    if (parser.used_vars() && parser.max_var() >= n)
        throw Error(ErrorKind::Validation, "variable x" + std::to_string(parser.max_var()) + " out of range for " + std::to_string(n) + " variables");
    std::vector<Form> forms;
    for (auto& p : polys) {
        std::map<Monomial, Integer> terms;
        for (auto& [m, c] : p) terms.emplace(detail::padded(m, n), c);
        forms.push_back(Form::from_terms(n, std::move(terms)));
    }
    return forms;
}

} // namespace orbitlab
