#pragma once

// Factorisation over Z[x]: squarefree decomposition, then Zassenhaus
// (Cantor-Zassenhaus modulo a small prime, quadratic Hensel lifting,
// subset recombination with a trial budget).

#include "orbitlab/poly.hpp"
#include "orbitlab/poly_gcd.hpp"
#include "orbitlab/poly_mod.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace orbitlab {

struct IrreducibleFactor {
    IntPoly factor;       // primitive, positive leading coefficient
    unsigned multiplicity;
    bool certified;       // false if recombination gave up on this factor
};

struct Factorization {
    Integer unit_content; // signed content of the input
    std::vector<IrreducibleFactor> factors;

    bool fully_certified() const {
        return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.certified; });
    }
};

namespace detail {

// Polynomials over Z/m as IntPoly with coefficients in [0, m).
inline IntPoly mod_reduce(const IntPoly& a, const Integer& m) {
    std::vector<Integer> c = a.coeffs();
    for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return IntPoly(std::move(c));
}

inline IntPoly mod_mul(const IntPoly& a, const IntPoly& b, const Integer& m) { return mod_reduce(a * b, m); }

// Division by a monic divisor modulo m.
inline std::pair<IntPoly, IntPoly> mod_divrem_monic(const IntPoly& a, const IntPoly& b, const Integer& m) {
    if (a.degree() < b.degree()) return {IntPoly{}, a};
    std::vector<Integer> r = a.coeffs();
    const auto& d = b.coeffs();
    const std::size_t db = d.size() - 1;
    std::vector<Integer> q(r.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer c = r[k + db];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), c.get_mpz_t(), d[j].get_mpz_t());
    }
    r.resize(db);
    return {mod_reduce(IntPoly(std::move(q)), m), mod_reduce(IntPoly(std::move(r)), m)};
}

inline IntPoly from_modp(const modp::Poly& a) {
    std::vector<Integer> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = static_cast<unsigned long>(a[i]);
    return IntPoly(std::move(c));
}

inline Integer symmetric(Integer v, const Integer& m) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > m / 2) v -= m;
    return v;
}

inline IntPoly symmetric(const IntPoly& a, const Integer& m) {
    std::vector<Integer> c = a.coeffs();
    for (auto& v : c) v = symmetric(v, m);
    return IntPoly(std::move(c));
}

// Quadratic Hensel lifting of f = g*h (mod p), h monic, from p up to the
// modulus `target` (a power p^(2^j)). Returns (g, h) modulo target.
inline std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const modp::Poly& g0, const modp::Poly& h0,
                                                    const modp::Field& F, const Integer& target) {
    auto [gcd_one, s0, t0] = modp::ext_gcd(g0, h0, F);
    (void)gcd_one;
    IntPoly g = from_modp(g0), h = from_modp(h0), s = from_modp(s0), t = from_modp(t0);
    Integer m(static_cast<unsigned long>(F.p));
    const IntPoly unit = IntPoly::constant(1);
    while (m < target) {
        const Integer m2 = m * m;
        IntPoly e = mod_reduce(f - g * h, m2);
        auto [q, r] = mod_divrem_monic(mod_mul(s, e, m2), h, m2);
        IntPoly g1 = mod_reduce(g + t * e + q * g, m2);
        IntPoly h1 = mod_reduce(h + r, m2);
        IntPoly b = mod_reduce(s * g1 + t * h1 - unit, m2);
        auto [c, d] = mod_divrem_monic(mod_mul(s, b, m2), h1, m2);
        s = mod_reduce(s - d, m2);
        t = mod_reduce(t - t * b - c * g1, m2);
        g = std::move(g1);
        h = std::move(h1);
        m = m2;
    }
    return {g, h};
}

// Lifts f = lc(f) * prod u_i (mod p) to monic factors modulo target.
inline void hensel_lift_all(const IntPoly& f, std::vector<modp::Poly> factors, const modp::Field& F,
                            const Integer& target, std::vector<IntPoly>& out) {
    if (factors.size() == 1) {
        Integer inv;
        Integer lc = f.lc();
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
        out.push_back(mod_reduce(inv * f, target));
        return;
    }
    const std::size_t half = factors.size() / 2;
    std::vector<modp::Poly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<modp::Poly> right(factors.begin() + static_cast<long>(half), factors.end());
    modp::Poly g0{F.reduce(f.lc())};
    for (const auto& u : left) g0 = modp::mul(g0, u, F);
    modp::Poly h0{1};
    for (const auto& u : right) h0 = modp::mul(h0, u, F);
    auto [g, h] = hensel_lift_pair(f, g0, h0, F, target);
    hensel_lift_all(g, std::move(left), F, target, out);
    hensel_lift_all(h, std::move(right), F, target, out);
}

inline const std::vector<modp::u64>& small_primes() {
    static const std::vector<modp::u64> primes = [] {
        std::vector<modp::u64> out;
        for (modp::u64 p = 3; p < 4000; p += 2)
            if (is_prime(Integer(static_cast<unsigned long>(p)))) out.push_back(p);
        return out;
    }();
    return primes;
}

// Factors a primitive squarefree f with f(0) != 0 and deg f >= 2.
inline void zassenhaus(const IntPoly& f, std::size_t budget, std::vector<std::pair<IntPoly, bool>>& out) {
    // pick the prime with the fewest modular factors among a few candidates
    std::vector<modp::Poly> best;
    modp::Field bestF{0};
    int tried = 0;
    for (modp::u64 p : small_primes()) {
        const modp::Field F{p};
        if (F.reduce(f.lc()) == 0) continue;
        modp::Poly fp = modp::reduce(f, F);
        if (!modp::is_squarefree(fp, F)) continue;
        auto fac = modp::factor_squarefree(fp, F);
        if (bestF.p == 0 || fac.size() < best.size()) {
            best = std::move(fac);
            bestF = F;
        }
        if (++tried == 5 || best.size() == 1) break;
    }
    if (bestF.p == 0) {
        out.emplace_back(f, false);
        return;
    }
    if (best.size() == 1) {
        out.emplace_back(f, true);
        return;
    }

    // |lc f| * 2^deg * ||f||_2 bounds every recombined candidate
    Integer norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    Integer norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    Integer bound = abs(f.lc()) * norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree() + 1));
    Integer target(static_cast<unsigned long>(bestF.p));
    while (target <= bound) target *= target;

    std::vector<IntPoly> lifted;
    hensel_lift_all(f, best, bestF, target, lifted);

    IntPoly rest = f;
    std::size_t trials = 0;
    std::size_t size = 1;
    while (2 * size <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        const std::size_t r = lifted.size();
        while (true) {
            if (++trials > budget) {
                out.emplace_back(rest, false);
                return;
            }
            const Integer lc = rest.lc();
            Integer c0 = lc;
            for (std::size_t i : idx) c0 = symmetric(Integer(c0 * lifted[i][0]), target);
            if (c0 != 0 && mpz_divisible_p(Integer(lc * rest[0]).get_mpz_t(), c0.get_mpz_t())) {
                IntPoly cand = IntPoly::constant(lc);
                for (std::size_t i : idx) cand = mod_mul(cand, lifted[i], target);
                cand = primitive_part(symmetric(cand, target));
                if (auto q = divide_exact(rest, cand)) {
                    out.emplace_back(cand, true);
                    rest = std::move(*q);
                    for (std::size_t k = idx.size(); k-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
                    found = true;
                    break;
                }
            }
            // next combination in lexicographic order
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == r - size + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    if (rest.degree() > 0) out.emplace_back(primitive_part(rest), true);
}

inline bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

} // namespace detail

/// Irreducible factors of a squarefree primitive polynomial, with a flag
/// telling whether irreducibility was established.
inline std::vector<std::pair<IntPoly, bool>> factor_squarefree(const IntPoly& f, std::size_t budget = 100000) {
    std::vector<std::pair<IntPoly, bool>> out;
    IntPoly g = primitive_part(f);
    if (g.degree() < 1) return out;
    if (g[0] == 0) {
        out.emplace_back(IntPoly{0, 1}, true);
        g = *divide_exact(g, IntPoly{0, 1});
    }
    if (g.degree() == 1)
        out.emplace_back(g, true);
    else if (g.degree() > 1)
        detail::zassenhaus(g, budget, out);
    return out;
}

/// Complete factorisation over Z, factors sorted by degree then coefficients.
inline Factorization factor(const IntPoly& f, std::size_t budget = 100000) {
    Factorization result;
    if (f.is_zero()) return result;
    result.unit_content = content(f);
    if (f.lc() < 0) result.unit_content = -result.unit_content;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (auto& [irr, ok] : factor_squarefree(part, budget)) result.factors.push_back({irr, mult, ok});
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return detail::poly_less(a.factor, b.factor); });
    return result;
}

} // namespace orbitlab
