#pragma once

// Dense polynomials over F_p for word-sized primes (p < 2^63), with the
// pieces needed by modular gcd and Cantor-Zassenhaus factorisation.

#include "orbitlab/integer.hpp"
#include "orbitlab/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <random>
#include <utility>
#include <vector>

namespace orbitlab::modp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>; // low degree first, no trailing zeros

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const {
        u64 r = a + b;
        return r >= p ? r - p : r;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    u64 reduce(const Integer& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p); }
};

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

inline Poly reduce(const IntPoly& a, const Field& F) {
    Poly r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.reduce(a.coeffs()[i]);
    trim(r);
    return r;
}

inline Poly add(const Poly& a, const Poly& b, const Field& F) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, const Field& F) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline Poly scale(const Poly& a, u64 k, const Field& F) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], k);
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, const Field& F) {
    if (a.empty() || b.empty()) return {};
    // accumulate in 128 bits and reduce lazily
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 126;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            if (acc[i + j] >= limit) acc[i + j] %= F.p;
        }
    }
    Poly r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % F.p);
    trim(r);
    return r;
}

/// a = q*b + r with deg r < deg b; b nonzero.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b, const Field& F) {
    if (deg(a) < deg(b)) return {Poly{}, a};
    Poly r = a;
    const std::size_t db = b.size() - 1;
    const u64 inv_lc = F.inv(b.back());
    Poly q(a.size() - db, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        u64 c = F.mul(r[k + db], inv_lc);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k + j] = F.sub(r[k + j], F.mul(c, b[j]));
    }
    trim(q);
    r.resize(db);
    trim(r);
    return {std::move(q), std::move(r)};
}

inline Poly rem(const Poly& a, const Poly& b, const Field& F) { return divrem(a, b, F).second; }

inline Poly monic(const Poly& a, const Field& F) {
    if (a.empty() || a.back() == 1) return a;
    return scale(a, F.inv(a.back()), F);
}

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(Poly a, Poly b, const Field& F) {
    while (!b.empty()) {
        Poly r = rem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, F);
}

/// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b, const Field& F) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divrem(r0, r1, F);
        Poly s2 = sub(s0, mul(q, s1, F), F);
        Poly t2 = sub(t0, mul(q, t1, F), F);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    u64 inv = F.inv(r0.back());
    return {scale(r0, inv, F), scale(s0, inv, F), scale(t0, inv, F)};
}

inline Poly derivative(const Poly& a, const Field& F) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

/// base^e mod m.
inline Poly powmod(Poly base, const Integer& e, const Poly& m, const Field& F) {
    Poly result{1};
    result = rem(result, m, F);
    base = rem(base, m, F);
    const std::size_t bits = bit_length(e);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, F), m, F);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, F), m, F);
    }
    return result;
}

inline bool is_squarefree(const Poly& a, const Field& F) {
    if (deg(a) < 1) return true;
    return deg(gcd(a, derivative(a, F), F)) == 0;
}

/// Distinct-degree factorisation of a squarefree monic f: pairs
/// (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<Poly, long>> distinct_degree(Poly f, const Field& F) {
    std::vector<std::pair<Poly, long>> out;
    const Integer p(static_cast<unsigned long>(F.p));
    const Poly x{0, 1};
    Poly h = rem(x, f, F);
    for (long d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(h, p, f, F);
        Poly g = gcd(sub(h, x, F), f, F);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divrem(f, g, F).first;
            h = rem(h, f, F);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

/// Cantor-Zassenhaus equal-degree splitting for odd p.
inline void equal_degree(const Poly& g, long d, const Field& F, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Integer e = ipow(Integer(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> coeff(0, F.p - 1);
    for (;;) {
        Poly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a) c = coeff(rng);
        trim(a);
        if (deg(a) < 1) continue;
        Poly b = sub(powmod(a, e, g, F), Poly{1}, F);
        Poly h = gcd(b, g, F);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            equal_degree(h, d, F, rng, out);
            equal_degree(divrem(g, h, F).first, d, F, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted by degree
/// then coefficients; deterministic for a fixed seed.
inline std::vector<Poly> factor_squarefree(const Poly& f, const Field& F, std::uint64_t seed = 0x5eedULL) {
    std::vector<Poly> out;
    if (deg(f) < 1) return out;
    std::mt19937_64 rng(seed);
    for (auto& [g, d] : distinct_degree(monic(f, F), F)) equal_degree(g, d, F, rng, out);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

/// 1024 word-sized primes just below 2^62, in decreasing order.
inline const std::vector<u64>& large_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> out;
        for (u64 cand = (1ULL << 62) - 1; out.size() < 1024; cand -= 2) {
            if (is_prime(Integer(static_cast<unsigned long>(cand)))) out.push_back(cand);
        }
        return out;
    }();
    return primes;
}

} // namespace orbitlab::modp
