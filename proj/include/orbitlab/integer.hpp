#pragma once

// Arbitrary-precision integer helpers on top of GMP.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace orbitlab {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::size_t bit_length(const Integer& a) {
    return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

/// Natural log of |a| for a != 0, accurate for integers of any size.
inline double log_abs(const Integer& a) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

inline double log_abs(const Rational& a) {
    return log_abs(a.get_num()) - log_abs(a.get_den());
}

/// Exponent of p in a (a != 0), by repeated division.
inline unsigned long valuation(const Integer& a, const Integer& p) {
    if (a == 0) return 0;
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline std::string to_string(const Integer& a) { return a.get_str(); }

namespace detail {

inline bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s, unsigned long base) {
    Integer a = base;
    a %= n;
    if (a == 0) return true;
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Integer nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

} // namespace detail

/// Deterministic below 3.3e24 (Miller-Rabin with the first 13 prime bases);
/// above that GMP's BPSW-based test is used.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static constexpr std::array<unsigned long, 13> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : bases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    static const Integer deterministic_limit("3317044064679887385961981");
    if (n >= deterministic_limit) return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long b : bases) {
        if (!detail::miller_rabin_round(n, d, s, b)) return false;
    }
    return true;
}

namespace detail {

// Pollard-Brent; n is odd, composite and has no small factors.
inline Integer pollard_brent(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = Integer(gcd(q, n));
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                Integer diff = x - ys;
                g = Integer(gcd(Integer(abs(diff)), n));
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer f = pollard_brent(n);
    factor_into(f, out);
    factor_into(Integer(n / f), out);
}

} // namespace detail

/// Prime factorisation of |n| (n != 0): trial division, then Pollard-Brent.
inline std::map<Integer, unsigned> factor_integer(const Integer& n) {
    std::map<Integer, unsigned> out;
    Integer m = abs(n);
    if (m == 0) return out;
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Integer(p).get_mpz_t());
        if (e) out[Integer(p)] += static_cast<unsigned>(e);
    }
    // wheel mod 30 trial division
    static constexpr std::array<unsigned long, 8> wheel{4, 2, 4, 2, 4, 6, 2, 6};
    unsigned long d = 7;
    std::size_t w = 0;
    while (d <= 40000 && Integer(d) * d <= m) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
                ++e;
            }
            out[Integer(d)] += e;
        }
        d += wheel[w];
        w = (w + 1) % wheel.size();
    }
    detail::factor_into(m, out);
    return out;
}

} // namespace orbitlab
