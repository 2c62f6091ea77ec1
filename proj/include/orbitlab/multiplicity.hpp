#pragma once

// Ramification indices on P^1, fiber factorisations of iterates, and the
// backward multiplicity cocycle kappa_{-n}(x).

#include "orbitlab/error.hpp"
#include "orbitlab/form.hpp"
#include "orbitlab/maps.hpp"
#include "orbitlab/poly.hpp"
#include "orbitlab/poly_factor.hpp"
#include "orbitlab/poly_gcd.hpp"
#include "orbitlab/proj_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace orbitlab {

/// b*F - a*G, whose zeros are the preimages of (a:b) under (F:G).
inline BinaryForm fiber_form(const BinaryForm& F, const BinaryForm& G, const ProjPoint& x) {
    if (x.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "point is not on P^1");
    return x[1] * F + Integer(-x[0]) * G;
}

/// Multiplicity of the root z = (a:b) in the binary form Q.
inline unsigned root_multiplicity(const BinaryForm& Q, const ProjPoint& z) {
    if (Q.is_zero()) throw Error(ErrorKind::ZeroInput, "zero form has no root multiplicities");
    if (z[1] == 0) return Q.multiplicity_at_infinity();
    const IntPoly lin(std::vector<Integer>{Integer(-z[0]), z[1]});
    IntPoly q = Q.dehomogenized();
    unsigned m = 0;
    while (auto next = divide_exact(q, lin)) {
        q = std::move(*next);
        ++m;
    }
    return m;
}

/// e_f(z): the multiplicity of z in the fiber over f(z).
inline unsigned ramification_index(const P1Morphism& f, const ProjPoint& z) {
    return root_multiplicity(fiber_form(f.F(), f.G(), f.evaluate(z)), z);
}

struct FiberFactor {
    BinaryForm form; // irreducible, primitive
    unsigned multiplicity = 1;
    bool certified = true;
};

struct FiberFactorization {
    std::vector<FiberFactor> factors;
    unsigned total_degree = 0;

    unsigned max_multiplicity() const {
        unsigned m = 0;
        for (const auto& f : factors) m = std::max(m, f.multiplicity);
        return m;
    }
};

/// Factorisation of the fiber form of an arbitrary morphism (F:G) over x.
inline FiberFactorization factor_fiber(const BinaryForm& F, const BinaryForm& G, const ProjPoint& x) {
    const BinaryForm Q = fiber_form(F, G, x);
    FiberFactorization out;
    out.total_degree = Q.degree();
    if (unsigned inf = Q.multiplicity_at_infinity(); inf > 0) out.factors.push_back({BinaryForm(1, IntPoly{1}), inf, true});
    for (const auto& fac : factor(Q.dehomogenized()).factors) {
        out.factors.push_back({BinaryForm(static_cast<unsigned>(fac.factor.degree()), fac.factor), fac.multiplicity, fac.certified});
    }
    return out;
}

/// The fiber f^{-n}(x) with multiplicities e_{f^n}(z), over Q.
inline FiberFactorization fiber_factorization(const P1Morphism& f, const ProjPoint& x, unsigned n,
                                              std::size_t degree_cap = kDefaultDegreeCap) {
    const auto [F, G] = compose_pullback(f, n, degree_cap);
    return factor_fiber(F, G, x);
}

/// Largest multiplicity in the fiber of (F:G) over x. Only needs the
/// squarefree decomposition, not irreducible factors.
inline unsigned max_fiber_multiplicity(const BinaryForm& F, const BinaryForm& G, const ProjPoint& x) {
    const BinaryForm Q = fiber_form(F, G, x);
    unsigned m = Q.multiplicity_at_infinity();
    for (const auto& sf : squarefree_decomposition(Q.dehomogenized())) m = std::max(m, sf.multiplicity);
    return m;
}

struct CocycleTable {
    /// entries[n] = kappa_{-n}(x), entries[0] = 1.
    std::vector<unsigned long> entries;

    std::size_t n_max() const { return entries.empty() ? 0 : entries.size() - 1; }

    /// kappa_{-n}^{1/n} for n >= 1.
    double root(std::size_t n) const {
        return std::pow(static_cast<double>(entries.at(n)), 1.0 / static_cast<double>(n));
    }
};

inline CocycleTable backward_cocycle(const P1Morphism& f, const ProjPoint& x, unsigned n_max,
                                     std::size_t degree_cap = kDefaultDegreeCap) {
    if (n_max == 0) throw Error(ErrorKind::Validation, "n_max must be at least 1");
    if (x.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "point is not on P^1");
    // fail before any work if the last iterate is over the cap
    std::size_t deg = 1;
    for (unsigned i = 0; i < n_max; ++i) {
        deg *= f.degree();
        if (deg > degree_cap)
            throw Error(ErrorKind::DegreeCapExceeded, "degree d^n exceeds cap " + std::to_string(degree_cap));
    }
    CocycleTable table;
    table.entries.push_back(1);
    P1Morphism g = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) g = compose(f, g, degree_cap);
        table.entries.push_back(max_fiber_multiplicity(g.F(), g.G(), x));
    }
    return table;
}

struct Bracket {
    double lower = 1.0;
    double upper = 1.0;
};

/// [min, max] of kappa^{1/n} over the last tail_window rows.
inline Bracket e_minus_estimate(const CocycleTable& table, std::size_t tail_window) {
    if (tail_window == 0) throw Error(ErrorKind::Validation, "tail window must be positive");
    if (table.entries.size() < tail_window + 1)
        throw Error(ErrorKind::TableTooShort, "cocycle table has " + std::to_string(table.entries.size()) + " rows, need " +
                                                  std::to_string(tail_window + 1));
    Bracket b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t n = table.n_max() + 1 - tail_window; n <= table.n_max(); ++n) {
        b.lower = std::min(b.lower, table.root(n));
        b.upper = std::max(b.upper, table.root(n));
    }
    return b;
}

/// e(f;Y) bracket: the componentwise max of the per-point brackets.
inline Bracket e_fY(const P1Morphism& f, std::span<const ProjPoint> Y, unsigned n_max, std::size_t tail_window,
                    std::size_t degree_cap = kDefaultDegreeCap) {
    if (Y.empty()) throw Error(ErrorKind::EmptySpec, "Y has no points");
    Bracket out{0.0, 0.0};
    for (const auto& y : Y) {
        Bracket b = e_minus_estimate(backward_cocycle(f, y, n_max, degree_cap), tail_window);
        out.lower = std::max(out.lower, b.lower);
        out.upper = std::max(out.upper, b.upper);
    }
    return out;
}

struct ChainRuleSample {
    ProjPoint x;
    unsigned lhs = 0;     // e_{g o f}(x)
    unsigned e_f = 0;     // e_f(x)
    unsigned e_g = 0;     // e_g(f(x))
    bool equal() const { return lhs == e_f * e_g; }
};

inline std::vector<ChainRuleSample> chain_rule_check(const P1Morphism& f, const P1Morphism& g, std::span<const ProjPoint> sample,
                                                     std::size_t degree_cap = kDefaultDegreeCap) {
    const P1Morphism gf = compose(g, f, degree_cap);
    std::vector<ChainRuleSample> out;
    for (const auto& x : sample) {
        ChainRuleSample s{x};
        s.lhs = ramification_index(gf, x);
        s.e_f = ramification_index(f, x);
        s.e_g = ramification_index(g, f.evaluate(x));
        out.push_back(std::move(s));
    }
    return out;
}

/// e_{f^{nl}}(y) for n = 1..n_max at a point y of exact period l.
inline std::vector<unsigned> periodic_forward_multiplicities(const P1Morphism& f, const ProjPoint& y, unsigned period,
                                                             unsigned n_max, std::size_t degree_cap = kDefaultDegreeCap) {
    if (period == 0) throw Error(ErrorKind::Validation, "period must be positive");
    ProjPoint z = y;
    for (unsigned i = 0; i < period; ++i) z = f.evaluate(z);
    if (!(z == y)) throw Error(ErrorKind::Validation, y.to_string() + " is not periodic with period " + std::to_string(period));
    const P1Morphism fl = iterate_morphism(f, period, degree_cap);
    std::vector<unsigned> out;
    P1Morphism g = fl;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) g = compose(fl, g, degree_cap);
        out.push_back(ramification_index(g, y));
    }
    return out;
}

} // namespace orbitlab
