#include "orbitlab/integer.hpp"
#include "orbitlab/place.hpp"
#include "orbitlab/proj_point.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace orbitlab;

namespace {

// brute-force valuation by repeated division
long brute_valuation(Integer n, long p) {
    n = abs(n);
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<bool> sieve(std::size_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = is[1] = false;
    for (std::size_t i = 2; i * i <= n; ++i)
        if (is[i])
            for (std::size_t j = i * i; j <= n; j += i) is[j] = false;
    return is;
}

Rational random_rational(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
    long a = 0;
    while (a == 0) a = num(rng);
    Rational r(Integer(a), Integer(den(rng)));
    r.canonicalize();
    return r;
}

} // namespace

TEST(NormalizePoint, ClearsDenominatorsAndGcd) {
    EXPECT_EQ(normalize_point({Rational(2, 3), Rational(4, 3)}), point({1, 2}));
    EXPECT_EQ(normalize_point({Rational(0), Rational(-5)}), point({0, 1}));
    EXPECT_EQ(normalize_point({Rational(6), Rational(-4), Rational(10)}), point({3, -2, 5}));
}

TEST(NormalizePoint, AllZeroThrows) {
    try {
        normalize_point({Rational(0), Rational(0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AllZero);
    }
}

TEST(NormalizePoint, IdempotentAndProjectivelyInvariant) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Rational> raw;
        for (int i = 0; i < 3; ++i) raw.push_back(trial % 5 == 0 && i == 0 ? Rational(0) : random_rational(rng, 1000));
        const ProjPoint x = normalize_point(raw);
        // invariants
        Integer g = 0;
        for (const auto& c : x.coords()) g = gcd(g, c);
        EXPECT_EQ(g, 1);
        for (const auto& c : x.coords()) {
            if (c != 0) {
                EXPECT_GT(c, 0);
                break;
            }
        }
        std::vector<Rational> again(x.coords().begin(), x.coords().end());
        EXPECT_EQ(normalize_point(again), x);
        const Rational lambda = random_rational(rng, 10000);
        std::vector<Rational> scaled;
        for (const auto& r : raw) scaled.push_back(lambda * r);
        EXPECT_EQ(normalize_point(scaled), x);
    }
}

TEST(Place, RejectsComposite) {
    EXPECT_NO_THROW(Place::finite(Integer(7)));
    try {
        Place::finite(Integer(12));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
    }
    EXPECT_THROW(Place::finite(Integer(1)), Error);
}

TEST(AbsValue, Examples) {
    EXPECT_DOUBLE_EQ(abs_value(Place::finite(Integer(2)), Rational(12)), 0.25);
    EXPECT_DOUBLE_EQ(abs_value(Place::infinite(), Rational(-3)), 3.0);
    EXPECT_DOUBLE_EQ(abs_value(Place::finite(Integer(5)), Rational(7, 25)), 25.0);
    try {
        abs_value(Place::infinite(), Rational(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroInput);
    }
}

TEST(AbsValue, MatchesBruteForceValuation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Rational a = random_rational(rng, 100000);
        for (long p : {2L, 3L, 5L, 7L, 101L}) {
            const long v = brute_valuation(a.get_num(), p) - brute_valuation(a.get_den(), p);
            EXPECT_EQ(valuation(a, Integer(p)), v);
            EXPECT_DOUBLE_EQ(abs_value(Place::finite(Integer(p)), a), std::pow(static_cast<double>(p), -static_cast<double>(v)));
        }
    }
}

TEST(LogAbsLedger, Examples) {
    EXPECT_TRUE(log_abs_ledger(Rational(1)).empty());
    EXPECT_TRUE(log_abs_ledger(Rational(1)).entries().empty());

    const auto l12 = log_abs_ledger(Rational(12));
    const auto e12 = l12.entries();
    ASSERT_EQ(e12.size(), 3u);
    EXPECT_TRUE(e12[0].first.is_infinite());
    EXPECT_NEAR(e12[0].second, std::log(12.0), 1e-15);
    EXPECT_EQ(e12[1].first, Place::finite(Integer(2)));
    EXPECT_NEAR(e12[1].second, -2 * std::log(2.0), 1e-15);
    EXPECT_EQ(e12[2].first, Place::finite(Integer(3)));
    EXPECT_NEAR(e12[2].second, -std::log(3.0), 1e-15);

    const auto l = log_abs_ledger(Rational(7, 25));
    EXPECT_NEAR(l.log_value(Place::infinite()), std::log(7.0 / 25.0), 1e-15);
    EXPECT_NEAR(l.log_value(Place::finite(Integer(5))), 2 * std::log(5.0), 1e-15);
    EXPECT_NEAR(l.log_value(Place::finite(Integer(7))), -std::log(7.0), 1e-15);
    EXPECT_EQ(l.log_value(Place::finite(Integer(3))), 0.0);
    EXPECT_THROW(log_abs_ledger(Rational(0)), Error);
}

TEST(LogAbsLedger, ProductFormula) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = random_rational(rng, 1000000000L);
        const auto l = log_abs_ledger(a);
        EXPECT_TRUE(l.product_formula_exact());
        const double scale = std::max(1.0, std::fabs(std::log(std::fabs(a.get_d()))));
        EXPECT_LE(std::fabs(l.sum()), 1e-12 * scale * 10);
    }
}

TEST(Primality, MatchesSieve) {
    const auto is = sieve(200000);
    for (std::size_t n = 0; n < is.size(); ++n) ASSERT_EQ(is_prime(Integer(static_cast<unsigned long>(n))), is[n]) << n;
}

TEST(Primality, StrongPseudoprimes) {
    // strong pseudoprimes to many small bases
    EXPECT_FALSE(is_prime(Integer("3215031751")));
    EXPECT_FALSE(is_prime(Integer("3825123056546413051")));
    EXPECT_FALSE(is_prime(Integer("318665857834031151167461")));
    EXPECT_TRUE(is_prime(Integer("1000000000000000003")));
    EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727")));
}

TEST(Factorization, RecombinesToInput) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<unsigned long> d(1, 1000000000000UL);
    for (int trial = 0; trial < 300; ++trial) {
        const Integer n(d(rng));
        Integer prod = 1;
        for (const auto& [p, e] : factor_integer(n)) {
            EXPECT_TRUE(is_prime(p));
            prod *= ipow(p, e);
        }
        EXPECT_EQ(prod, n);
    }
    // semiprime beyond trial division
    const Integer p("1000000007"), q("998244353");
    auto f = factor_integer(Integer(p * q));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.at(p), 1u);
    EXPECT_EQ(f.at(q), 1u);
}

TEST(LogAbs, HugeIntegers) {
    const Integer big = ipow(Integer(2), 5000);
    EXPECT_NEAR(log_abs(big), 5000 * std::log(2.0), 1e-9);
    EXPECT_NEAR(log_abs(Integer(-1000)), std::log(1000.0), 1e-13);
}
