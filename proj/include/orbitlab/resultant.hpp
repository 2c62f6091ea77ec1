#pragma once

// Resultants of binary forms via the Sylvester matrix: exact (Bareiss
// fraction-free elimination) and modulo a word-sized prime.

#include "orbitlab/form.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/poly_mod.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace orbitlab {

/// Sylvester matrix of F (degree m) and G (degree n); rows list
/// coefficients from s^deg down to t^deg.
inline std::vector<std::vector<Integer>> sylvester_matrix(const BinaryForm& F, const BinaryForm& G) {
    const std::size_t m = F.degree(), n = G.degree(), size = m + n;
    std::vector<std::vector<Integer>> M(size, std::vector<Integer>(size, Integer(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) M[r][r + k] = F.coeff(m - k);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) M[n + r][r + k] = G.coeff(n - k);
    return M;
}

/// Exact determinant by Bareiss elimination with row pivoting.
inline Integer determinant(std::vector<std::vector<Integer>> M) {
    const std::size_t n = M.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && M[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = std::move(v);
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : Integer(-M[n - 1][n - 1]);
}

inline Integer resultant(const BinaryForm& F, const BinaryForm& G) { return determinant(sylvester_matrix(F, G)); }

/// Res(F, G) mod p by Gaussian elimination over F_p.
inline modp::u64 resultant_mod(const BinaryForm& F, const BinaryForm& G, modp::u64 p) {
    const modp::Field Fp{p};
    auto Mi = sylvester_matrix(F, G);
    const std::size_t n = Mi.size();
    std::vector<std::vector<modp::u64>> M(n, std::vector<modp::u64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = Fp.reduce(Mi[i][j]);
    modp::u64 det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && M[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(M[k], M[piv]);
            det = Fp.neg(det);
        }
        det = Fp.mul(det, M[k][k]);
        const modp::u64 inv = Fp.inv(M[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0) continue;
            const modp::u64 factor = Fp.mul(M[i][k], inv);
            for (std::size_t j = k; j < n; ++j) M[i][j] = Fp.sub(M[i][j], Fp.mul(factor, M[k][j]));
        }
    }
    return det;
}

/// True when some prime certifies Res(F, G) != 0. A false return is not a
/// proof of vanishing.
inline bool resultant_nonzero_certificate(const BinaryForm& F, const BinaryForm& G, int primes = 4) {
    for (int i = 0; i < primes; ++i)
        if (resultant_mod(F, G, modp::large_primes()[static_cast<std::size_t>(i)]) != 0) return true;
    return false;
}

} // namespace orbitlab
