#pragma once

// Dense univariate polynomials over Z, coefficients stored low degree first.

#include "orbitlab/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly constant(Integer v) { return IntPoly(std::vector<Integer>{std::move(v)}); }
    static IntPoly monomial(Integer v, std::size_t deg) {
        std::vector<Integer> c(deg + 1);
        c[deg] = std::move(v);
        return IntPoly(std::move(c));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const Integer& lc() const { return c_.back(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    std::vector<Integer>& mutable_coeffs() { return c_; }

    Integer operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Integer eval(const Integer& x) const {
        Integer r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    std::string to_string(const char* var = "x") const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

private:
    std::vector<Integer> c_;
};

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Integer> r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += y[i];
    return IntPoly(std::move(r));
}

inline IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Integer> r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
    return IntPoly(std::move(r));
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Integer> r(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
    return IntPoly(std::move(r));
}

inline IntPoly operator*(const Integer& k, const IntPoly& a) {
    std::vector<Integer> r = a.coeffs();
    for (auto& v : r) v *= k;
    return IntPoly(std::move(r));
}

inline Integer content(const IntPoly& a) {
    Integer g = 0;
    for (const auto& v : a.coeffs()) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

/// Divides out the content and makes the leading coefficient positive.
inline IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    Integer g = content(a);
    if (a.lc() < 0) g = -g;
    std::vector<Integer> r = a.coeffs();
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(r));
}

inline IntPoly derivative(const IntPoly& a) {
    if (a.degree() < 1) return {};
    std::vector<Integer> r(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) r[i - 1] = a.coeffs()[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(r));
}

inline IntPoly power(const IntPoly& a, unsigned e) {
    IntPoly result = IntPoly::constant(1), base = a;
    while (e) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return result;
}

/// Quotient a / b when b divides a in Z[x]; nullopt otherwise.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Integer> rem = a.coeffs();
    const auto& d = b.coeffs();
    const std::size_t db = d.size() - 1;
    std::vector<Integer> q(rem.size() - db);
    Integer quo;
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer& top = rem[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d[db].get_mpz_t())) return std::nullopt;
        mpz_divexact(quo.get_mpz_t(), top.get_mpz_t(), d[db].get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(rem[k + j].get_mpz_t(), quo.get_mpz_t(), d[j].get_mpz_t());
        q[k] = quo;
    }
    for (std::size_t i = 0; i < db; ++i)
        if (rem[i] != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

inline std::string IntPoly::to_string(const char* var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Integer& v = c_[i];
        if (v == 0) continue;
        Integer mag = abs(v);
        if (s.empty())
            s += v < 0 ? "-" : "";
        else
            s += v < 0 ? " - " : " + ";
        if (mag != 1 || i == 0) {
            s += mag.get_str();
            if (i) s += "*";
        }
        if (i) {
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace orbitlab
