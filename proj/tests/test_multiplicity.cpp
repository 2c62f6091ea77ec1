#include "orbitlab/maps.hpp"
#include "orbitlab/multiplicity.hpp"
#include "orbitlab/parser.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

using namespace orbitlab;

namespace {

ErrorKind error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::AllZero;
}

P1Morphism morphism_of(const char* text) { return P1Morphism::certify(RationalSelfMap::from_forms(parse_forms(text))); }

std::vector<ProjPoint> p1_points(long H) {
    std::vector<ProjPoint> out;
    for (long a = 0; a <= H; ++a)
        for (long b = -H; b <= H; ++b) {
            if (a == 0 && b != 1) continue;
            if (std::gcd(a, std::labs(b)) != 1) continue;
            out.push_back(point({a, b}));
        }
    return out;
}

// kappa_{-n}(x) from the critical points alone: a backward path picks up
// ramification only where it passes a critical point c, so
// kappa_{-n}(x) = max(1, kappa_{-(n-j)}(c) e_{f^j}(c)) over f^j(c) = x.
struct CriticalOracle {
    const P1Morphism& f;
    std::vector<ProjPoint> crit;

    unsigned forward_index(const ProjPoint& c, unsigned j) const {
        unsigned e = 1;
        ProjPoint z = c;
        for (unsigned i = 0; i < j; ++i) {
            e *= ramification_index(f, z);
            z = f.evaluate(z);
        }
        return e;
    }

    unsigned long kappa(unsigned n, const ProjPoint& x) const {
        unsigned long best = 1;
        for (const auto& c : crit) {
            ProjPoint z = c;
            for (unsigned j = 1; j <= n; ++j) {
                z = f.evaluate(z);
                if (z == x) best = std::max(best, kappa(n - j, c) * forward_index(c, j));
            }
        }
        return best;
    }
};

using cplx = std::complex<long double>;

// Durand-Kerner on a monic rescaling; converges (slowly) at repeated roots too
std::vector<cplx> numeric_roots(const IntPoly& p) {
    const long deg = p.degree();
    std::vector<cplx> c;
    for (long i = 0; i <= deg; ++i) c.emplace_back(static_cast<long double>(p[static_cast<std::size_t>(i)].get_d()), 0.0L);
    for (auto& v : c) v /= c.back();
    std::vector<cplx> z;
    const cplx seed(0.4L, 0.9L);
    for (long i = 0; i < deg; ++i) z.push_back(std::pow(seed, i) * 1.3L);
    auto eval = [&](cplx x) {
        cplx r = 0;
        for (long i = deg; i >= 0; --i) r = r * x + c[static_cast<std::size_t>(i)];
        return r;
    };
    for (int it = 0; it < 2000; ++it) {
        for (std::size_t i = 0; i < z.size(); ++i) {
            cplx den = 1;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) den *= z[i] - z[j];
            z[i] -= eval(z[i]) / den;
        }
    }
    return z;
}

// sizes of clusters of nearby roots
std::vector<unsigned> cluster_sizes(const std::vector<cplx>& z, long double tol) {
    std::vector<int> label(z.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = next;
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (label[j] < 0 && std::abs(z[i] - z[j]) < tol) label[j] = next;
        ++next;
    }
    std::vector<unsigned> sizes(static_cast<std::size_t>(next), 0);
    for (int l : label) ++sizes[static_cast<std::size_t>(l)];
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

} // namespace

TEST(Ramification, Examples) {
    const auto sq = morphism_of("s^2 | t^2");
    EXPECT_EQ(ramification_index(sq, point({0, 1})), 2u);
    EXPECT_EQ(ramification_index(sq, point({1, 0})), 2u);
    EXPECT_EQ(ramification_index(sq, point({1, 1})), 1u);
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    EXPECT_EQ(ramification_index(cheb, point({0, 1})), 2u);
    EXPECT_EQ(ramification_index(cheb, point({1, 1})), 1u);
    const auto cube = morphism_of("s^3 - 3*s*t^2 | t^3");
    EXPECT_EQ(ramification_index(cube, point({1, 1})), 2u);
    EXPECT_EQ(ramification_index(cube, point({1, 0})), 3u);
}

TEST(Ramification, RiemannHurwitzOnSmallHeights) {
    // sum of (e - 1) over all rational points never exceeds 2d - 2, and
    // equals it when every critical point is rational
    for (const char* text : {"s^2 | t^2", "2*s^2 - t^2 | t^2", "s^3 - 3*s*t^2 | t^3", "s^2 | s^2 - t^2"}) {
        const auto f = morphism_of(text);
        unsigned total = 0;
        for (const auto& z : p1_points(12)) total += ramification_index(f, z) - 1;
        EXPECT_EQ(total, 2 * f.degree() - 2) << text;
    }
}

TEST(FiberFactorization, ChebyshevSecondIterate) {
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    const auto fac = fiber_factorization(cheb, point({1, 1}), 2);
    EXPECT_EQ(fac.total_degree, 4u);
    EXPECT_EQ(fac.max_multiplicity(), 2u);
    std::map<std::string, unsigned> got;
    for (const auto& f : fac.factors) got[f.form.to_string()] = f.multiplicity;
    EXPECT_EQ(got.size(), 3u);
    EXPECT_EQ(got[BinaryForm(1, IntPoly{0, 1}).to_string()], 2u);
    EXPECT_EQ(got[BinaryForm(1, IntPoly{-1, 1}).to_string()], 1u);
    EXPECT_EQ(got[BinaryForm(1, IntPoly{1, 1}).to_string()], 1u);
}

TEST(FiberFactorization, DegreesSumToIterateDegree) {
    for (const char* text : {"2*s^2 - t^2 | t^2", "s^2 - t^2 | t^2", "s^2 | s^2 - t^2", "s^3 - 3*s*t^2 | t^3"}) {
        const auto f = morphism_of(text);
        for (const auto& x : {point({0, 1}), point({1, 0}), point({1, 1}), point({-1, 1}), point({2, 3})})
            for (unsigned n = 1; n <= 3; ++n) {
                const auto fac = fiber_factorization(f, x, n);
                unsigned total = 0;
                for (const auto& g : fac.factors) total += g.form.degree() * g.multiplicity;
                EXPECT_EQ(total, fac.total_degree);
                EXPECT_EQ(fac.total_degree, static_cast<unsigned>(std::pow(f.degree(), n)));
                const auto [F, G] = compose_pullback(f, n);
                EXPECT_EQ(fac.max_multiplicity(), max_fiber_multiplicity(F, G, x));
            }
    }
}

TEST(FiberFactorization, MultiplicitiesMatchNumericRootClusters) {
    // multiplicities are constant on Galois orbits: every root of an
    // irreducible factor of multiplicity m sits in a cluster of size m
    for (const char* text : {"2*s^2 - t^2 | t^2", "s^2 - t^2 | t^2", "s^3 - 3*s*t^2 | t^3"}) {
        const auto f = morphism_of(text);
        for (const auto& x : {point({1, 1}), point({0, 1}), point({-1, 1}), point({3, 2})}) {
            const auto fac = fiber_factorization(f, x, 2);
            std::vector<unsigned> expect;
            for (const auto& g : fac.factors)
                if (!(g.form.degree() == 1 && g.form.coeff(0) == 1 && g.form.dehomogenized().degree() == 0))
                    expect.insert(expect.end(), g.form.degree(), g.multiplicity);
            std::sort(expect.begin(), expect.end());
            const auto [F, G] = compose_pullback(f, 2);
            const IntPoly q = fiber_form(F, G, x).dehomogenized();
            EXPECT_EQ(cluster_sizes(numeric_roots(q), 1e-4L), expect) << text << " over " << x.to_string();
        }
    }
}

TEST(Cocycle, Examples) {
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    EXPECT_EQ(backward_cocycle(cheb, point({1, 1}), 6).entries, (std::vector<unsigned long>{1, 1, 2, 2, 2, 2, 2}));
    EXPECT_EQ(backward_cocycle(cheb, point({1, 0}), 5).entries, (std::vector<unsigned long>{1, 2, 4, 8, 16, 32}));
    const auto sq = morphism_of("s^2 | t^2");
    const auto t = backward_cocycle(sq, point({0, 1}), 8);
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(t.entries[n], 1UL << n);
    EXPECT_EQ(backward_cocycle(sq, point({3, 1}), 6).entries, std::vector<unsigned long>(7, 1));
}

TEST(Cocycle, MatchesCriticalPointOracle) {
    struct Case {
        const char* text;
        std::vector<ProjPoint> crit;
    };
    const std::vector<Case> cases{
        {"2*s^2 - t^2 | t^2", {point({0, 1}), point({1, 0})}},
        {"s^2 - t^2 | t^2", {point({0, 1}), point({1, 0})}},
        {"s^3 - 3*s*t^2 | t^3", {point({1, 1}), point({-1, 1}), point({1, 0})}},
        {"s^2 | s^2 - t^2", {point({0, 1}), point({1, 0})}},
    };
    for (const auto& c : cases) {
        const auto f = morphism_of(c.text);
        const CriticalOracle oracle{f, c.crit};
        const unsigned n_max = f.degree() == 3 ? 4 : 6;
        for (const auto& x : p1_points(3)) {
            const auto table = backward_cocycle(f, x, n_max);
            for (unsigned n = 0; n <= n_max; ++n)
                EXPECT_EQ(table.entries[n], oracle.kappa(n, x)) << c.text << " x=" << x.to_string() << " n=" << n;
        }
    }
}

TEST(Cocycle, SubmultiplicativeAndBounded) {
    const auto f = morphism_of("s^2 - t^2 | t^2");
    for (const auto& x : p1_points(4)) {
        const auto t = backward_cocycle(f, x, 7);
        for (std::size_t n = 1; n <= 7; ++n) {
            EXPECT_LE(t.entries[n], 1UL << n);
            EXPECT_GE(t.entries[n], t.entries[n - 1]);
        }
    }
}

TEST(Cocycle, Limits) {
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    EXPECT_EQ(error_of([&] { backward_cocycle(cheb, point({1, 1}), 11); }), ErrorKind::DegreeCapExceeded);
    EXPECT_EQ(error_of([&] { backward_cocycle(cheb, point({1, 1}), 0); }), ErrorKind::Validation);
    const auto t = backward_cocycle(cheb, point({1, 1}), 3);
    EXPECT_EQ(error_of([&] { e_minus_estimate(t, 4); }), ErrorKind::TableTooShort);
    EXPECT_NO_THROW(e_minus_estimate(t, 3));
}

TEST(Cocycle, EBrackets) {
    const auto sq = morphism_of("s^2 | t^2");
    const std::vector<ProjPoint> Y0{point({0, 1})};
    const auto b = e_fY(sq, Y0, 8, 3);
    EXPECT_DOUBLE_EQ(b.lower, 2.0);
    EXPECT_DOUBLE_EQ(b.upper, 2.0);
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    const std::vector<ProjPoint> Y1{point({1, 1})};
    const auto c = e_fY(cheb, Y1, 8, 3);
    EXPECT_NEAR(c.lower, std::pow(2.0, 1.0 / 8.0), 1e-12);
    EXPECT_NEAR(c.upper, std::pow(2.0, 1.0 / 6.0), 1e-12);
    const std::vector<ProjPoint> Y2{point({1, 1}), point({1, 0})};
    EXPECT_DOUBLE_EQ(e_fY(cheb, Y2, 6, 2).upper, 2.0);
    EXPECT_EQ(error_of([&] { e_fY(cheb, std::vector<ProjPoint>{}, 6, 2); }), ErrorKind::EmptySpec);
}

TEST(ChainRule, HoldsOnSample) {
    const auto f = morphism_of("2*s^2 - t^2 | t^2"), g = morphism_of("s^3 - 3*s*t^2 | t^3");
    const auto h = morphism_of("s^2 | s^2 - t^2");
    const auto sample = p1_points(10);
    for (const auto& [a, b] : {std::pair{&f, &g}, std::pair{&g, &f}, std::pair{&h, &f}, std::pair{&g, &h}}) {
        for (const auto& s : chain_rule_check(*a, *b, sample)) EXPECT_TRUE(s.equal()) << s.x.to_string();
    }
}

TEST(PeriodicMultiplicities, Examples) {
    const auto sq = morphism_of("s^2 | t^2");
    EXPECT_EQ(periodic_forward_multiplicities(sq, point({0, 1}), 1, 5), (std::vector<unsigned>{2, 4, 8, 16, 32}));
    const auto cheb = morphism_of("2*s^2 - t^2 | t^2");
    EXPECT_EQ(periodic_forward_multiplicities(cheb, point({1, 1}), 1, 4), (std::vector<unsigned>{1, 1, 1, 1}));
    const auto basilica = morphism_of("s^2 - t^2 | t^2");
    // 0 -> -1 -> 0, critical at 0
    EXPECT_EQ(periodic_forward_multiplicities(basilica, point({0, 1}), 2, 3), (std::vector<unsigned>{2, 4, 8}));
    EXPECT_EQ(error_of([&] { periodic_forward_multiplicities(basilica, point({0, 1}), 1, 3); }), ErrorKind::Validation);
}
