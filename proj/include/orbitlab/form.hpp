#pragma once

// Homogeneous forms with integer coefficients: sparse multivariate forms
// for maps of P^N, and dense binary forms for the P^1 machinery.

#include "orbitlab/error.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/poly.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {

using Monomial = std::vector<unsigned>;

class Form {
public:
    Form() = default;

    /// Throws Validation if the terms are not all of total degree `degree`.
    Form(std::size_t nvars, unsigned degree, std::map<Monomial, Integer> terms)
        : nvars_(nvars), degree_(degree) {
        for (auto& [mono, coeff] : terms) {
            if (coeff == 0) continue;
            if (mono.size() != nvars) throw Error(ErrorKind::Validation, "monomial arity mismatch");
            unsigned total = 0;
            for (unsigned e : mono) total += e;
            if (total != degree) throw Error(ErrorKind::Validation, "form is not homogeneous of degree " + std::to_string(degree));
            terms_.emplace(mono, coeff);
        }
    }

    /// Infers the degree from the terms; a zero form needs the explicit constructor.
    static Form from_terms(std::size_t nvars, std::map<Monomial, Integer> terms) {
        unsigned degree = 0;
        for (const auto& [mono, coeff] : terms) {
            if (coeff == 0) continue;
            degree = 0;
            for (unsigned e : mono) degree += e;
            break;
        }
        return Form(nvars, degree, std::move(terms));
    }

    static Form variable(std::size_t nvars, std::size_t k) {
        Monomial m(nvars, 0);
        m[k] = 1;
        return Form(nvars, 1, {{m, Integer(1)}});
    }

    std::size_t nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Integer>& terms() const { return terms_; }

    Integer content() const {
        Integer g = 0;
        for (const auto& [m, c] : terms_) g = gcd(g, c);
        return g;
    }

    Form divided_by(const Integer& k) const {
        std::map<Monomial, Integer> t;
        for (const auto& [m, c] : terms_) t.emplace(m, Integer(c / k));
        return Form(nvars_, degree_, std::move(t));
    }

    /// Sum of absolute coefficient values.
    Integer abs_coeff_sum() const {
        Integer s = 0;
        for (const auto& [m, c] : terms_) s += abs(c);
        return s;
    }

    Integer eval(std::span<const Integer> x) const {
        if (x.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "form evaluated at a point of wrong dimension");
        // powers x_i^k, k <= degree
        std::vector<std::vector<Integer>> pw(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            pw[i].reserve(degree_ + 1);
            pw[i].emplace_back(1);
            for (unsigned k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * x[i]);
        }
        Integer sum = 0, term;
        for (const auto& [mono, coeff] : terms_) {
            term = coeff;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (mono[i]) term *= pw[i][mono[i]];
            sum += term;
        }
        return sum;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        // highest monomial first in lexicographic order
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [mono, coeff] = *it;
            Integer mag = abs(coeff);
            if (s.empty())
                s += coeff < 0 ? "-" : "";
            else
                s += coeff < 0 ? " - " : " + ";
            std::string mon;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (!mono[i]) continue;
                if (!mon.empty()) mon += "*";
                mon += var_name(i);
                if (mono[i] > 1) mon += "^" + std::to_string(mono[i]);
            }
            if (mon.empty())
                s += mag.get_str();
            else if (mag == 1)
                s += mon;
            else
                s += mag.get_str() + "*" + mon;
        }
        return s;
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    std::string var_name(std::size_t i) const {
        if (nvars_ == 2) return i == 0 ? "s" : "t";
        return "x" + std::to_string(i);
    }

    std::size_t nvars_ = 0;
    unsigned degree_ = 0;
    std::map<Monomial, Integer> terms_;
};

/// Binary form F(s, t) = sum c_i s^i t^(d-i), stored as the dehomogenised
/// polynomial in x = s/t together with the formal degree d.
class BinaryForm {
public:
    BinaryForm() = default;
    BinaryForm(unsigned degree, IntPoly dehomogenized) : degree_(degree), poly_(std::move(dehomogenized)) {
        if (poly_.degree() > static_cast<long>(degree_)) throw Error(ErrorKind::Validation, "binary form exceeds its degree");
    }

    static BinaryForm from_form(const Form& f) {
        if (f.nvars() != 2) throw Error(ErrorKind::DimensionMismatch, "binary form needs two variables");
        std::vector<Integer> c(f.degree() + 1);
        for (const auto& [mono, coeff] : f.terms()) c[mono[0]] = coeff;
        return BinaryForm(f.degree(), IntPoly(std::move(c)));
    }

    /// The linear form b*s - a*t vanishing at (a:b).
    static BinaryForm linear_vanishing_at(const Integer& a, const Integer& b) {
        return BinaryForm(1, IntPoly(std::vector<Integer>{Integer(-a), b}));
    }

    Form to_form() const {
        std::map<Monomial, Integer> t;
        for (std::size_t i = 0; i < poly_.coeffs().size(); ++i) {
            if (poly_.coeffs()[i] != 0) t.emplace(Monomial{static_cast<unsigned>(i), degree_ - static_cast<unsigned>(i)}, poly_.coeffs()[i]);
        }
        return Form(2, degree_, std::move(t));
    }

    unsigned degree() const { return degree_; }
    const IntPoly& dehomogenized() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    /// Coefficient of s^i t^(d-i).
    Integer coeff(std::size_t i) const { return poly_[i]; }

    /// Exponent of t dividing the form, i.e. the multiplicity of (1:0).
    unsigned multiplicity_at_infinity() const { return degree_ - static_cast<unsigned>(poly_.degree()); }

    Integer eval(const Integer& s, const Integer& t) const {
        // homogeneous Horner: r <- r*s + c_i * t^(d-i)
        Integer r = poly_[degree_], tp = 1;
        for (std::size_t i = degree_; i-- > 0;) {
            tp *= t;
            r = r * s + poly_[i] * tp;
        }
        return r;
    }

    Integer content() const { return orbitlab::content(poly_); }

    BinaryForm divided_by(const Integer& k) const {
        std::vector<Integer> c = poly_.coeffs();
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
        return BinaryForm(degree_, IntPoly(std::move(c)));
    }

    std::string to_string() const { return to_form().to_string(); }

    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
        return BinaryForm(a.degree_ + b.degree_, a.poly_ * b.poly_);
    }
    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
        if (a.degree_ != b.degree_) throw Error(ErrorKind::Validation, "adding forms of different degree");
        return BinaryForm(a.degree_, a.poly_ + b.poly_);
    }
    friend BinaryForm operator*(const Integer& k, const BinaryForm& a) { return BinaryForm(a.degree_, k * a.poly_); }
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.degree_ == b.degree_ && a.poly_ == b.poly_; }

    /// F(A, B) for forms A, B of a common degree e; result has degree d*e.
    BinaryForm substitute(const BinaryForm& A, const BinaryForm& B) const {
        if (A.degree_ != B.degree_) throw Error(ErrorKind::Validation, "substituted forms differ in degree");
        const unsigned e = A.degree_;
        std::vector<IntPoly> apow{IntPoly::constant(1)}, bpow{IntPoly::constant(1)};
        for (unsigned k = 1; k <= degree_; ++k) {
            apow.push_back(apow.back() * A.poly_);
            bpow.push_back(bpow.back() * B.poly_);
        }
        IntPoly sum;
        for (std::size_t i = 0; i < poly_.coeffs().size(); ++i) {
            const Integer& c = poly_.coeffs()[i];
            if (c == 0) continue;
            sum = sum + c * (apow[i] * bpow[degree_ - i]);
        }
        return BinaryForm(degree_ * e, std::move(sum));
    }

private:
    unsigned degree_ = 0;
    IntPoly poly_;
};

} // namespace orbitlab
