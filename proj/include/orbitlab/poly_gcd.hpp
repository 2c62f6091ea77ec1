#pragma once

// Polynomial gcd over Z by word-sized modular images and CRT, and Yun's
// squarefree decomposition on top of it.

#include "orbitlab/error.hpp"
#include "orbitlab/poly.hpp"
#include "orbitlab/poly_mod.hpp"

#include <climits>
#include <vector>

namespace orbitlab {

/// Primitive gcd (positive leading coefficient) of two polynomials over Z.
/// The integer content of the gcd is not tracked.
inline IntPoly gcd_primitive(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero()) return primitive_part(b0);
    if (b0.is_zero()) return primitive_part(a0);
    const IntPoly a = primitive_part(a0);
    const IntPoly b = primitive_part(b0);
    if (a.degree() == 0 || b.degree() == 0) return IntPoly::constant(1);
    if (a == b) return a;

    const Integer g = gcd(a.lc(), b.lc());
    std::vector<Integer> acc;
    Integer modulus = 0;
    long current = LONG_MAX;

    for (modp::u64 p : modp::large_primes()) {
        const modp::Field F{p};
        if (F.reduce(a.lc()) == 0 || F.reduce(b.lc()) == 0) continue;
        modp::Poly h = modp::gcd(modp::reduce(a, F), modp::reduce(b, F), F);
        const long dh = modp::deg(h);
        if (dh == 0) return IntPoly::constant(1);
        if (dh > current) continue; // unlucky prime
        h = modp::scale(h, F.reduce(g), F);
        h.resize(static_cast<std::size_t>(dh) + 1, 0);
        const Integer P(static_cast<unsigned long>(p));

        if (dh < current) {
            current = dh;
            acc.assign(h.size(), Integer(0));
            for (std::size_t i = 0; i < h.size(); ++i) {
                acc[i] = static_cast<unsigned long>(h[i]);
                if (acc[i] > P / 2) acc[i] -= P;
            }
            modulus = P;
            continue;
        }

        // CRT: x = acc_i (mod modulus), x = h_i (mod p)
        const modp::u64 inv = F.inv(F.reduce(modulus));
        const Integer new_mod = modulus * P;
        const Integer half = new_mod / 2;
        bool changed = false;
        for (std::size_t i = 0; i < h.size(); ++i) {
            modp::u64 diff = F.sub(h[i], F.reduce(acc[i]));
            if (diff == 0) continue;
            Integer x = acc[i] + modulus * static_cast<unsigned long>(F.mul(diff, inv));
            if (x > half) x -= new_mod;
            if (x < -half) x += new_mod;
            acc[i] = x;
            changed = true;
        }
        modulus = new_mod;
        if (changed) continue;

        IntPoly cand = primitive_part(IntPoly(acc));
        if (cand.degree() == current && divide_exact(a, cand) && divide_exact(b, cand)) return cand;
    }
    throw Error(ErrorKind::BudgetExceeded, "modular gcd ran out of primes");
}

struct SquarefreeFactor {
    IntPoly factor; // primitive, positive leading coefficient
    unsigned multiplicity;
};

/// Yun's algorithm: f = c * prod factor_i^i with pairwise coprime squarefree
/// factors. Constant input gives an empty list.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f) {
    std::vector<SquarefreeFactor> out;
    if (f.degree() < 1) return out;
    const IntPoly a = primitive_part(f);
    const IntPoly b = derivative(a);
    const IntPoly c = gcd_primitive(a, b);
    IntPoly w = *divide_exact(a, c);
    IntPoly y = *divide_exact(b, c);
    IntPoly z = y - derivative(w);
    for (unsigned i = 1; w.degree() > 0; ++i) {
        IntPoly g = gcd_primitive(w, z);
        if (g.degree() > 0) out.push_back({g, i});
        w = *divide_exact(w, g);
        y = *divide_exact(z, g);
        z = y - derivative(w);
    }
    return out;
}

} // namespace orbitlab
