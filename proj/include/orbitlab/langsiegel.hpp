#pragma once

// Local-height / height ratios along orbits, Banach density profiles of
// return sets, and the Roth-type scan of rational points on P^1.

#include "orbitlab/degrees.hpp"
#include "orbitlab/error.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/multiplicity.hpp"
#include "orbitlab/orbit.hpp"
#include "orbitlab/place.hpp"
#include "orbitlab/proj_point.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitlab {

struct RatioEntry {
    std::size_t n = 0;
    double numerator = 0.0;   // sum over S of lambda_{Y,v}(f^n x)
    double denominator = 0.0; // h(f^n x)
    std::optional<double> ratio; // defined when denominator > 0
};

struct RatioSeries {
    std::vector<RatioEntry> entries;
    std::vector<std::size_t> skipped; // steps on the support of Y
    std::size_t horizon = 0;          // last orbit index
};

inline RatioSeries ratio_series(std::span<const OrbitRecord> orbit, const SubschemeSpec& Y, std::span<const Place> S) {
    RatioSeries out;
    for (const auto& rec : orbit) {
        out.horizon = rec.n;
        const LocalHeight lam = local_height_sum(rec.point(), Y, S);
        if (lam.is_infinite()) {
            out.skipped.push_back(rec.n);
            continue;
        }
        RatioEntry e{rec.n, lam.value(), rec.height, std::nullopt};
        if (rec.height > 0.0) e.ratio = e.numerator / e.denominator;
        out.entries.push_back(e);
    }
    return out;
}

struct CoordinateRatioSeries {
    std::vector<std::pair<std::size_t, double>> entries; // n, log|a_k| / h
    std::vector<std::size_t> zero_height;
    std::vector<std::size_t> zero_coordinate;
};

inline CoordinateRatioSeries coordinate_ratio_series(std::span<const OrbitRecord> orbit, std::size_t k) {
    CoordinateRatioSeries out;
    for (const auto& rec : orbit) {
        const ProjPoint& x = rec.point();
        if (k >= x.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate index out of range");
        if (rec.height == 0.0) {
            out.zero_height.push_back(rec.n);
        } else if (x[k] == 0) {
            out.zero_coordinate.push_back(rec.n);
        } else {
            out.entries.emplace_back(rec.n, log_abs(x[k]) / rec.height);
        }
    }
    return out;
}

struct DensityEntry {
    std::size_t d = 0;
    std::size_t count = 0; // best window count
    std::size_t start = 0; // first window start reaching it
    Rational value() const {
        Rational r(static_cast<unsigned long>(count), static_cast<unsigned long>(d + 1));
        r.canonicalize();
        return r;
    }
};

struct DensityProfile {
    std::size_t horizon = 0;
    std::vector<DensityEntry> entries;

    /// Value at the largest computed window length.
    Rational summary() const {
        if (entries.empty()) return Rational(0);
        auto it = std::max_element(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.d < b.d; });
        return it->value();
    }
};

/// For each d: max over 0 <= n <= N - d of #(A cap [n, n + d]) / (d + 1).
inline DensityProfile banach_profile(std::span<const std::size_t> A, std::size_t horizon, std::span<const std::size_t> d_grid) {
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i] > horizon) throw Error(ErrorKind::Validation, "set element beyond the horizon");
        if (i > 0 && A[i] <= A[i - 1]) throw Error(ErrorKind::UnsortedInput, "set must be strictly increasing");
    }
    // prefix[i] = #(A cap [0, i))
    std::vector<std::size_t> prefix(horizon + 2, 0);
    for (std::size_t a : A) prefix[a + 1] = 1;
    for (std::size_t i = 1; i < prefix.size(); ++i) prefix[i] += prefix[i - 1];
    DensityProfile out;
    out.horizon = horizon;
    for (std::size_t d : d_grid) {
        if (d > horizon) throw Error(ErrorKind::Validation, "window length beyond the horizon");
        DensityEntry e{d, 0, 0};
        for (std::size_t n = 0; n + d <= horizon; ++n) {
            const std::size_t c = prefix[n + d + 1] - prefix[n];
            if (c > e.count) {
                e.count = c;
                e.start = n;
            }
        }
        out.entries.push_back(e);
    }
    return out;
}

/// 1, 2, 4, ... up to the horizon, then the horizon itself.
inline std::vector<std::size_t> default_d_grid(std::size_t horizon) {
    std::vector<std::size_t> g;
    for (std::size_t d = 1; d < horizon; d *= 2) g.push_back(d);
    g.push_back(horizon);
    return g;
}

struct ReturnSet {
    std::vector<std::size_t> indices;
    DensityProfile profile;
};

/// {n : ratio_n >= theta} profiled over the orbit horizon.
inline ReturnSet threshold_return_set(const RatioSeries& series, double theta, std::span<const std::size_t> d_grid) {
    if (!(theta >= 0.0)) throw Error(ErrorKind::Validation, "theta must be nonnegative");
    ReturnSet out;
    for (const auto& e : series.entries)
        if (e.ratio && *e.ratio >= theta) out.indices.push_back(e.n);
    out.profile = banach_profile(out.indices, series.horizon, d_grid);
    return out;
}

inline ReturnSet threshold_return_set(const RatioSeries& series, double theta) {
    const auto grid = default_d_grid(series.horizon);
    return threshold_return_set(series, theta, grid);
}

/// m_X(Y) for a zero-dimensional subscheme of a curve: the largest multiplicity.
inline unsigned m_XY(const SubschemeSpec& Y) {
    if (!Y.points_mode()) throw Error(ErrorKind::WrongMode, "m_X(Y) needs a points-mode subscheme");
    unsigned m = 0;
    for (const auto& p : Y.points()) m = std::max(m, p.multiplicity);
    return m;
}

/// Calls visit(p) for every p in P^1(Q) with coprime coordinates of
/// absolute value at most H, in Farey order on [0, 1] followed by the
/// images under x -> 1/x and x -> -x.
template <typename Visit>
void for_each_rational_point(unsigned long H, Visit&& visit) {
    if (H == 0) throw Error(ErrorKind::Validation, "coordinate bound must be positive");
    // Farey sequence of order H: successive fractions a/b < c/d
    std::vector<std::pair<unsigned long, unsigned long>> farey;
    unsigned long a = 0, b = 1, c = 1, d = H;
    farey.emplace_back(a, b);
    while (c <= H) {
        const unsigned long k = (H + b) / d;
        const unsigned long e = k * c - a, f = k * d - b;
        farey.emplace_back(c, d);
        a = c;
        b = d;
        c = e;
        d = f;
        if (a == 1 && b == 1) break;
    }
    auto emit = [&](unsigned long num, unsigned long den, bool negative) {
        Integer p(num), q(den);
        if (negative) q = -q;
        visit(ProjPoint::from_integers({p, q}));
    };
    // x = a/b in [0, 1] is the point (a : b); its reciprocal is (b : a)
    for (const auto& [p, q] : farey) {
        emit(p, q, false);
        if (p != 0 && p != q) emit(q, p, false);
    }
    emit(1, 0, false);
    // negatives: -(a/b) = (a : -b) with a > 0
    for (const auto& [p, q] : farey) {
        if (p == 0) continue;
        emit(p, q, true);
        if (p != q) emit(q, p, true);
    }
}

struct RothViolator {
    ProjPoint x;
    double lambda = 0.0;
    double bound = 0.0;
};

struct RothScan {
    std::size_t scanned = 0;
    std::size_t on_support = 0;
    std::vector<RothViolator> violators; // sorted by point
};

/// Points of height <= log H where sum_{v in S} lambda_{Y,v}(x) exceeds
/// m_X(Y) (2 + eps) h(x). Points of Y itself are counted, not tested.
inline RothScan roth_scan(const SubschemeSpec& Y, std::span<const Place> S, double eps, unsigned long H) {
    if (!(eps > 0.0)) throw Error(ErrorKind::Validation, "epsilon must be positive");
    if (Y.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "the scan runs on P^1");
    if (S.empty()) throw Error(ErrorKind::EmptySpec, "empty place set");
    const double weight = static_cast<double>(m_XY(Y)) * (2.0 + eps);
    RothScan out;
    for_each_rational_point(H, [&](ProjPoint x) {
        ++out.scanned;
        const LocalHeight lam = local_height_sum(x, Y, S);
        if (lam.is_infinite()) {
            ++out.on_support;
            return;
        }
        const double bound = weight * weil_height(x);
        if (lam.value() > bound) out.violators.push_back({std::move(x), lam.value(), bound});
    });
    std::sort(out.violators.begin(), out.violators.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    return out;
}

struct HypothesisCheck {
    Bracket e_bracket;        // e(f;Y)
    AlphaEstimate alpha;      // alpha_f(x)
    double alpha_value = 1.0; // classified value, else alpha_lower
    bool holds = false;       // e(f;Y) < alpha_f(x)

    std::string label() const { return holds ? "theorem instance" : "negative control"; }
};

/// Tests e(f;Y) < alpha_f(x) from an upper bracket for e(f;Y) and the
/// arithmetic degree estimate. The estimate uses the snapped value when the
/// tail is tight enough to classify it, and the tail minimum otherwise.
inline HypothesisCheck check_ratio_hypothesis(const Bracket& e_bracket, const AlphaEstimate& alpha) {
    HypothesisCheck h;
    h.e_bracket = e_bracket;
    h.alpha = alpha;
    h.alpha_value = alpha.classified_value.value_or(alpha.alpha_lower);
    h.holds = e_bracket.upper < h.alpha_value;
    return h;
}

} // namespace orbitlab
