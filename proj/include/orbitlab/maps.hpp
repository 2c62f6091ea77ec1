#pragma once

// Rational self-maps of P^N, certified morphisms of P^1 and product maps
// on (P^1)^d.

#include "orbitlab/error.hpp"
#include "orbitlab/form.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/poly_gcd.hpp"
#include "orbitlab/proj_point.hpp"
#include "orbitlab/resultant.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {

inline constexpr std::size_t kDefaultDegreeCap = 1024;

namespace detail {

// Restriction of a form to the line {lambda*u + mu*w}.
inline BinaryForm restrict_to_line(const Form& g, std::span<const Integer> u, std::span<const Integer> w) {
    std::vector<BinaryForm> lin;
    for (std::size_t i = 0; i < u.size(); ++i) lin.emplace_back(1, IntPoly(std::vector<Integer>{w[i], u[i]}));
    BinaryForm sum(g.degree(), IntPoly{});
    for (const auto& [mono, coeff] : g.terms()) {
        BinaryForm term(0, IntPoly::constant(coeff));
        for (std::size_t i = 0; i < mono.size(); ++i)
            for (unsigned k = 0; k < mono[i]; ++k) term = term * lin[i];
        sum = sum + term;
    }
    return sum;
}

// True when the binary forms have a common zero on P^1 (zero forms ignored).
inline bool binary_forms_share_root(std::span<const BinaryForm> forms) {
    unsigned common_t = ~0U;
    IntPoly g;
    bool any = false;
    for (const auto& f : forms) {
        if (f.is_zero()) continue;
        any = true;
        common_t = std::min(common_t, f.multiplicity_at_infinity());
        g = gcd_primitive(g, f.dehomogenized());
    }
    if (!any) return true;
    return common_t > 0 || g.degree() > 0;
}

} // namespace detail

/// f = (F_0 : ... : F_N), forms of a common degree d >= 1 without a common
/// factor. Evaluation detects the indeterminacy locus pointwise.
class RationalSelfMap {
public:
    static RationalSelfMap from_forms(std::vector<Form> forms) {
        if (forms.size() < 2) throw Error(ErrorKind::Validation, "a self-map of P^N needs N+1 >= 2 forms");
        const std::size_t n = forms.size();
        unsigned d = 0;
        for (const auto& f : forms) {
            if (f.nvars() != n) throw Error(ErrorKind::DimensionMismatch, "forms must use N+1 variables");
            if (!f.is_zero()) {
                if (d != 0 && f.degree() != d) throw Error(ErrorKind::Validation, "forms have different degrees");
                d = f.degree();
            }
        }
        if (d == 0) throw Error(ErrorKind::Validation, "map needs a nonconstant form (degree >= 1)");
        Integer c = 0;
        for (auto& f : forms) {
            if (f.is_zero()) f = Form(n, d, {});
            c = gcd(c, f.content());
        }
        if (c != 1)
            for (auto& f : forms) f = f.divided_by(c);
        RationalSelfMap m;
        m.forms_ = std::move(forms);
        m.degree_ = d;
        if (m.has_common_factor()) throw Error(ErrorKind::CommonFactor, "forms share a common polynomial factor");
        return m;
    }

    std::size_t dim() const { return forms_.size() - 1; }
    unsigned degree() const { return degree_; }
    const std::vector<Form>& forms() const { return forms_; }

    /// nullopt signals that x lies in the indeterminacy locus.
    std::optional<ProjPoint> evaluate(const ProjPoint& x) const {
        if (x.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from map dimension");
        std::vector<Integer> y;
        y.reserve(forms_.size());
        bool all_zero = true;
        for (const auto& f : forms_) {
            y.push_back(f.eval(x.coords()));
            if (y.back() != 0) all_zero = false;
        }
        if (all_zero) return std::nullopt;
        return ProjPoint::from_integers(std::move(y));
    }

    /// C_f = (sum of |coefficients| over all forms) * (number of monomials);
    /// h(f(x)) <= d h(x) + log C_f.
    Integer height_constant() const {
        Integer s = 0;
        std::size_t count = 0;
        for (const auto& f : forms_) {
            s += f.abs_coeff_sum();
            count += f.terms().size();
        }
        return s * static_cast<unsigned long>(count);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < forms_.size(); ++i) {
            if (i) s += " | ";
            s += forms_[i].to_string();
        }
        return s;
    }

private:
    bool has_common_factor() const {
        if (dim() == 1) {
            std::vector<BinaryForm> bf;
            for (const auto& f : forms_) bf.push_back(BinaryForm::from_form(f));
            return detail::binary_forms_share_root(bf);
        }
        // A common factor survives restriction to every line; forms without
        // one have a zero locus of codimension >= 2, which a generic line misses.
        std::mt19937_64 rng(0x1ce5ULL);
        std::uniform_int_distribution<long> coord(-50, 50);
        for (int attempt = 0; attempt < 12; ++attempt) {
            std::vector<Integer> u(forms_.size()), w(forms_.size());
            for (auto& c : u) c = coord(rng);
            for (auto& c : w) c = coord(rng);
            std::vector<BinaryForm> bf;
            for (const auto& f : forms_) bf.push_back(detail::restrict_to_line(f, u, w));
            if (!detail::binary_forms_share_root(bf)) return false;
        }
        return true;
    }

    std::vector<Form> forms_;
    unsigned degree_ = 0;
};

/// A morphism P^1 -> P^1 of degree d, certified by Res(F, G) != 0.
class P1Morphism {
public:
    /// Throws CommonRoot if the resultant vanishes.
    static P1Morphism certify(BinaryForm F, BinaryForm G) {
        if (F.degree() != G.degree()) throw Error(ErrorKind::Validation, "forms of different degree");
        if (F.degree() == 0) throw Error(ErrorKind::Validation, "degree must be at least 1");
        Integer res = resultant(F, G);
        if (res == 0) throw Error(ErrorKind::CommonRoot, "Res(F, G) = 0: the forms share a root");
        P1Morphism f(std::move(F), std::move(G));
        f.resultant_ = res;
        return f;
    }

    static P1Morphism certify(const RationalSelfMap& m) {
        if (m.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "not a self-map of P^1");
        return certify(BinaryForm::from_form(m.forms()[0]), BinaryForm::from_form(m.forms()[1]));
    }

    unsigned degree() const { return F_.degree(); }
    const BinaryForm& F() const { return F_; }
    const BinaryForm& G() const { return G_; }

    /// Exact resultant when the morphism was certified directly; composites
    /// carry none.
    const std::optional<Integer>& resultant_value() const { return resultant_; }

    ProjPoint evaluate(const ProjPoint& x) const {
        if (x.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "point is not on P^1");
        return ProjPoint::from_integers({F_.eval(x[0], x[1]), G_.eval(x[0], x[1])});
    }

    RationalSelfMap as_map() const { return RationalSelfMap::from_forms({F_.to_form(), G_.to_form()}); }

    std::string to_string() const { return F_.to_string() + " | " + G_.to_string(); }

    /// outer o inner. The composite of morphisms is a morphism, so no new
    /// resultant is computed; the joint integer content is cleared.
    friend P1Morphism compose(const P1Morphism& outer, const P1Morphism& inner, std::size_t degree_cap = kDefaultDegreeCap) {
        const std::size_t deg = static_cast<std::size_t>(outer.degree()) * inner.degree();
        if (deg > degree_cap)
            throw Error(ErrorKind::DegreeCapExceeded, "composite degree " + std::to_string(deg) + " exceeds cap " + std::to_string(degree_cap));
        BinaryForm F = outer.F_.substitute(inner.F_, inner.G_);
        BinaryForm G = outer.G_.substitute(inner.F_, inner.G_);
        Integer c = gcd(F.content(), G.content());
        if (c != 1) {
            F = F.divided_by(c);
            G = G.divided_by(c);
        }
        return P1Morphism(std::move(F), std::move(G));
    }

private:
    P1Morphism(BinaryForm F, BinaryForm G) : F_(std::move(F)), G_(std::move(G)) {
        Integer c = gcd(F_.content(), G_.content());
        if (c > 1) {
            F_ = F_.divided_by(c);
            G_ = G_.divided_by(c);
        }
    }

    BinaryForm F_, G_;
    std::optional<Integer> resultant_;
};

inline P1Morphism certify_p1_morphism(const BinaryForm& F, const BinaryForm& G) { return P1Morphism::certify(F, G); }

/// f^n as a morphism; throws DegreeCapExceeded when d^n > degree_cap.
inline P1Morphism iterate_morphism(const P1Morphism& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap) {
    if (n == 0) throw Error(ErrorKind::Validation, "iteration count must be at least 1");
    std::size_t deg = 1;
    for (unsigned i = 0; i < n; ++i) {
        deg *= f.degree();
        if (deg > degree_cap)
            throw Error(ErrorKind::DegreeCapExceeded, "degree d^n exceeds cap " + std::to_string(degree_cap));
    }
    P1Morphism g = f;
    for (unsigned i = 1; i < n; ++i) g = compose(f, g, degree_cap);
    return g;
}

/// (F_n, G_n) defining f^n, content-free, degree d^n.
inline std::pair<BinaryForm, BinaryForm> compose_pullback(const P1Morphism& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap) {
    P1Morphism g = iterate_morphism(f, n, degree_cap);
    return {g.F(), g.G()};
}

/// g_1 x ... x g_d on (P^1)^d with deg g_1 >= ... >= deg g_d.
class ProductMap {
public:
    explicit ProductMap(std::vector<P1Morphism> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw Error(ErrorKind::Validation, "product map needs at least one factor");
        for (std::size_t i = 1; i < factors_.size(); ++i)
            if (factors_[i].degree() > factors_[i - 1].degree())
                throw Error(ErrorKind::UnsortedInput, "factor degrees must be nonincreasing");
    }

    const std::vector<P1Morphism>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    std::vector<unsigned> degrees() const {
        std::vector<unsigned> d;
        for (const auto& f : factors_) d.push_back(f.degree());
        return d;
    }

    std::vector<ProjPoint> evaluate(std::span<const ProjPoint> x) const {
        if (x.size() != factors_.size()) throw Error(ErrorKind::DimensionMismatch, "tuple size differs from factor count");
        std::vector<ProjPoint> y;
        for (std::size_t i = 0; i < x.size(); ++i) y.push_back(factors_[i].evaluate(x[i]));
        return y;
    }

private:
    std::vector<P1Morphism> factors_;
};

} // namespace orbitlab
