#include "orbitlab/langsiegel.hpp"
#include "orbitlab/maps.hpp"
#include "orbitlab/parser.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace orbitlab;

namespace {

const Place inf = Place::infinite();

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

SubschemeSpec single_point(long a, long b, unsigned mult = 1) { return SubschemeSpec::from_points({{point({a, b}), mult}}); }

// window counts by direct scanning, no prefix sums
std::size_t brute_best_count(const std::set<std::size_t>& A, std::size_t horizon, std::size_t d) {
    std::size_t best = 0;
    for (std::size_t n = 0; n + d <= horizon; ++n) {
        std::size_t c = 0;
        for (std::size_t i = n; i <= n + d; ++i) c += A.count(i);
        best = std::max(best, c);
    }
    return best;
}

} // namespace

TEST(RatioSeries, SquaringAgainstInfinityAndOrigin) {
    const auto o = iterate_orbit(morphism_of("s^2 | t^2"), point({2, 1}), {.n_max = 8});
    const std::vector<Place> S{inf};
    const auto at_inf = ratio_series(o.records, single_point(1, 0), S);
    const auto at_zero = ratio_series(o.records, single_point(0, 1), S);
    ASSERT_EQ(at_inf.entries.size(), 9u);
    EXPECT_EQ(at_inf.horizon, 8u);
    for (const auto& e : at_inf.entries) {
        // lambda_{(1:0)}(a:b) = log max(|a|,|b|) - log|b| = h when b = 1
        EXPECT_NEAR(e.numerator, e.denominator, 1e-9);
        EXPECT_NEAR(*e.ratio, 1.0, 1e-12);
    }
    for (const auto& e : at_zero.entries) EXPECT_NEAR(*e.ratio, 0.0, 1e-12);
}

TEST(RatioSeries, SkipsSupportAndZeroHeight) {
    // 0 -> -1 -> 0 under z^2 - 1
    const auto o = iterate_orbit(morphism_of("s^2 - t^2 | t^2"), point({0, 1}), {.n_max = 4, .stop_on_cycle = false});
    const std::vector<Place> S{inf};
    const auto r = ratio_series(o.records, single_point(0, 1), S);
    EXPECT_EQ(r.skipped, (std::vector<std::size_t>{0, 2, 4}));
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_FALSE(r.entries[0].ratio);
}

TEST(RatioSeries, MatchesLogSpaceOracle) {
    const auto o = iterate_orbit(morphism_of("s^2 - 2*t^2 | s*t + t^2"), point({3, 2}), {.n_max = 12});
    const std::vector<Place> S{inf};
    const auto r = ratio_series(o.records, single_point(1, 0), S);
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& x = o.records[r.entries[i].n].point();
        const double oracle = std::max(log_abs(x[0]), log_abs(x[1])) - log_abs(x[1]);
        EXPECT_NEAR(r.entries[i].numerator, oracle, 1e-9 * std::max(1.0, oracle));
        EXPECT_NEAR(r.entries[i].denominator, std::max(log_abs(x[0]), log_abs(x[1])), 1e-9 * r.entries[i].denominator);
    }
}

TEST(CoordinateRatio, Examples) {
    const auto o = iterate_orbit(morphism_of("s^2 | t^2"), point({3, 2}), {.n_max = 5});
    const auto c0 = coordinate_ratio_series(o.records, 0), c1 = coordinate_ratio_series(o.records, 1);
    for (const auto& [n, v] : c0.entries) EXPECT_NEAR(v, 1.0, 1e-12);
    for (const auto& [n, v] : c1.entries) EXPECT_NEAR(v, std::log(2.0) / std::log(3.0), 1e-12);
    const auto fixed = iterate_orbit(morphism_of("s^2 | t^2"), point({1, 1}), {.n_max = 3});
    EXPECT_EQ(coordinate_ratio_series(fixed.records, 0).zero_height.size(), fixed.records.size());
    const auto zero = iterate_orbit(morphism_of("s^2 | t^2"), point({0, 1}), {.n_max = 3});
    EXPECT_EQ(error_of([&] { coordinate_ratio_series(zero.records, 2); }), ErrorKind::DimensionMismatch);
}

TEST(BanachProfile, MultiplesOfThree) {
    std::vector<std::size_t> A;
    for (std::size_t n = 0; n <= 30; n += 3) A.push_back(n);
    const std::vector<std::size_t> grid{0, 1, 2, 3, 30};
    const auto p = banach_profile(A, 30, grid);
    EXPECT_EQ(p.entries[0].value(), Rational(1));
    EXPECT_EQ(p.entries[1].value(), Rational(1, 2));
    EXPECT_EQ(p.entries[2].value(), Rational(1, 3));
    EXPECT_EQ(p.entries[3].value(), Rational(1, 2));
    EXPECT_EQ(p.entries[4].value(), Rational(11, 31));
    EXPECT_EQ(p.summary(), Rational(11, 31));
}

TEST(BanachProfile, MatchesBruteForceWindows) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t horizon = 10 + trial % 50;
        std::bernoulli_distribution keep(0.1 + 0.008 * trial);
        std::set<std::size_t> S;
        for (std::size_t i = 0; i <= horizon; ++i)
            if (keep(rng)) S.insert(i);
        const std::vector<std::size_t> A(S.begin(), S.end());
        std::vector<std::size_t> grid(horizon + 1);
        std::iota(grid.begin(), grid.end(), 0);
        const auto p = banach_profile(A, horizon, grid);
        for (const auto& e : p.entries) {
            ASSERT_EQ(e.count, brute_best_count(S, horizon, e.d)) << trial << " d=" << e.d;
            EXPECT_LE(e.value(), 1);
        }
        // window counts never decrease with the window
        for (std::size_t i = 1; i < p.entries.size(); ++i) EXPECT_GE(p.entries[i].count, p.entries[i - 1].count);
    }
}

TEST(BanachProfile, Validation) {
    const std::vector<std::size_t> unsorted{3, 1}, beyond{1, 20}, grid{2};
    EXPECT_EQ(error_of([&] { banach_profile(unsorted, 10, grid); }), ErrorKind::UnsortedInput);
    EXPECT_EQ(error_of([&] { banach_profile(beyond, 10, grid); }), ErrorKind::Validation);
    const std::vector<std::size_t> big{11};
    EXPECT_EQ(error_of([&] { banach_profile(std::vector<std::size_t>{}, 10, big); }), ErrorKind::Validation);
    EXPECT_EQ(default_d_grid(10), (std::vector<std::size_t>{1, 2, 4, 8, 10}));
    EXPECT_EQ(banach_profile(std::vector<std::size_t>{}, 10, grid).summary(), 0);
}

TEST(ReturnSet, ShrinksAsThresholdRises) {
    const auto o = iterate_orbit(morphism_of("s^2 - 2*t^2 | s*t + t^2"), point({3, 2}), {.n_max = 14});
    const std::vector<Place> S{inf, Place::finite(Integer(2))};
    const auto r = ratio_series(o.records, single_point(1, 0), S);
    std::vector<std::size_t> prev;
    for (double theta : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 2.0}) {
        const auto A = threshold_return_set(r, theta);
        if (theta > 0.0) {
            EXPECT_TRUE(std::includes(prev.begin(), prev.end(), A.indices.begin(), A.indices.end()));
        }
        prev = A.indices;
    }
    EXPECT_EQ(error_of([&] { threshold_return_set(r, -0.1); }), ErrorKind::Validation);
}

TEST(MXY, LargestMultiplicity) {
    EXPECT_EQ(m_XY(SubschemeSpec::from_points({{point({0, 1}), 2}, {point({1, 0}), 3}})), 3u);
    EXPECT_EQ(error_of([] { m_XY(SubschemeSpec::from_forms(parse_forms("x0", 2))); }), ErrorKind::WrongMode);
}

TEST(MXY, FormsModeAgreesWithMultiplicity) {
    // the subscheme cut out by x0^m is the point (0:1) with multiplicity m
    for (unsigned m = 1; m <= 4; ++m) {
        const std::string text = "x0^" + std::to_string(m);
        const auto Y = SubschemeSpec::from_forms(parse_forms(text, 2));
        for (const auto& x : {point({3, 7}), point({12, 5}), point({1, 100})})
            for (const auto& v : {inf, Place::finite(Integer(3))})
                EXPECT_NEAR(local_height(x, Y, v).value(), m * local_height_point(x, point({0, 1}), v).value(), 1e-12);
    }
}

TEST(RationalPoints, EnumerationIsCompleteAndDistinct) {
    for (unsigned long H : {1UL, 2UL, 7UL, 30UL}) {
        std::set<ProjPoint> seen;
        std::size_t visits = 0;
        for_each_rational_point(H, [&](const ProjPoint& x) {
            ++visits;
            seen.insert(x);
            EXPECT_LE(abs(x[0]), Integer(H));
            EXPECT_LE(abs(x[1]), Integer(H));
        });
        EXPECT_EQ(seen.size(), visits);
        std::size_t brute = 0;
        const long h = static_cast<long>(H);
        for (long a = 0; a <= h; ++a)
            for (long b = -h; b <= h; ++b)
                if ((a > 0 || b == 1) && std::gcd(a, std::labs(b)) == 1) ++brute;
        EXPECT_EQ(visits, brute) << H;
    }
    std::size_t n100 = 0;
    for_each_rational_point(100, [&](const ProjPoint&) { ++n100; });
    EXPECT_EQ(n100, 12176u);
}

TEST(RothScan, OriginHasNoViolators) {
    const std::vector<Place> S{inf}, S2{inf, Place::finite(Integer(2)), Place::finite(Integer(3))};
    for (const auto& places : {S, S2}) {
        const auto r = roth_scan(single_point(0, 1), places, 0.5, 100);
        EXPECT_EQ(r.scanned, 12176u);
        EXPECT_EQ(r.on_support, 1u);
        EXPECT_TRUE(r.violators.empty());
    }
}

TEST(RothScan, ViolatorsShrinkWithEpsilonAndStayLow) {
    const auto Y = single_point(1000, 999);
    const std::vector<Place> S{inf};
    const double hy = std::log(1000.0);
    std::set<ProjPoint> prev;
    bool first = true;
    for (double eps : {0.05, 0.2, 0.5, 1.0, 3.0}) {
        const auto r = roth_scan(Y, S, eps, 60);
        std::set<ProjPoint> cur;
        for (const auto& v : r.violators) {
            cur.insert(v.x);
            EXPECT_GT(v.lambda, v.bound);
            // lambda_inf <= h(x) + h(y), so violators have h(x) < h(y) / (1 + eps)
            EXPECT_LT(weil_height(v.x), hy / (1.0 + eps));
        }
        if (first) {
            EXPECT_FALSE(cur.empty());
        } else {
            EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        }
        prev = std::move(cur);
        first = false;
    }
}

TEST(RothScan, Validation) {
    const std::vector<Place> S{inf}, none;
    EXPECT_EQ(error_of([&] { roth_scan(single_point(0, 1), S, 0.0, 10); }), ErrorKind::Validation);
    EXPECT_EQ(error_of([&] { roth_scan(single_point(0, 1), none, 0.5, 10); }), ErrorKind::EmptySpec);
    EXPECT_EQ(error_of([&] { roth_scan(SubschemeSpec::from_points({{point({0, 1, 1}), 1}}), S, 0.5, 10); }),
              ErrorKind::DimensionMismatch);
}

TEST(Hypothesis, ComparesBracketWithAlpha) {
    AlphaEstimate a;
    a.alpha_lower = 1.9;
    a.alpha_upper = 1.95;
    a.classified_value = 2.0;
    EXPECT_TRUE(check_ratio_hypothesis({1.0, 1.0}, a).holds);
    EXPECT_EQ(check_ratio_hypothesis({1.0, 1.0}, a).label(), "theorem instance");
    EXPECT_FALSE(check_ratio_hypothesis({2.0, 2.0}, a).holds);
    EXPECT_EQ(check_ratio_hypothesis({2.0, 2.0}, a).label(), "negative control");
    a.classified_value.reset();
    EXPECT_FALSE(check_ratio_hypothesis({1.0, 1.92}, a).holds);
    EXPECT_EQ(check_ratio_hypothesis({1.0, 1.92}, a).alpha_value, 1.9);
}

TEST(Hypothesis, TheoremInstanceAndNegativeControl) {
    const std::vector<Place> S{inf};
    const std::vector<ProjPoint> Yinf{point({1, 0})};
    const auto Y = single_point(1, 0);
    const auto prof = DegreeProfile::from_mu({2});

    // z -> 1/(z^2 + 1): infinity has two unramified preimages
    const auto f = morphism_of("t^2 | s^2 + t^2");
    const auto of = iterate_orbit(f, point({2, 1}), {.n_max = 12});
    const auto hf = check_ratio_hypothesis(e_fY(f, Yinf, 6, 3), alpha_estimate(of.heights(), 5, prof));
    EXPECT_TRUE(hf.holds);
    EXPECT_DOUBLE_EQ(hf.e_bracket.upper, 1.0);
    const auto rf = threshold_return_set(ratio_series(of.records, Y, S), 0.5);
    EXPECT_LE(rf.indices.size(), 2u);

    // polynomial: infinity is totally ramified and totally invariant
    const auto g = morphism_of("s^2 - t^2 | t^2");
    const auto og = iterate_orbit(g, point({3, 1}), {.n_max = 12});
    const auto hg = check_ratio_hypothesis(e_fY(g, Yinf, 6, 3), alpha_estimate(og.heights(), 5, prof));
    EXPECT_FALSE(hg.holds);
    EXPECT_DOUBLE_EQ(hg.e_bracket.lower, 2.0);
    const auto rg = threshold_return_set(ratio_series(og.records, Y, S), 0.5);
    EXPECT_EQ(rg.indices.size(), og.records.size());
    EXPECT_EQ(rg.profile.summary(), 1);
}
