#pragma once

// Dynamical degree profiles, arithmetic degree estimates from height
// series, and the empirical height-growth recursion check.

#include "orbitlab/error.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/proj_point.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitlab {

/// d_0 = 1, d_1, ..., d_dim with ratios mu_i = d_i / d_{i-1}.
class DegreeProfile {
public:
    /// Builds the profile from mu_1..mu_dim; they must be nonincreasing.
    static DegreeProfile from_mu(std::vector<double> mu) {
        if (mu.empty()) throw Error(ErrorKind::Validation, "degree profile needs at least one ratio");
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (!(mu[i] >= 1.0)) throw Error(ErrorKind::Validation, "dynamical degree ratios must be at least 1");
            if (i > 0 && mu[i] > mu[i - 1]) throw Error(ErrorKind::Validation, "ratios violate log-concavity");
        }
        DegreeProfile p;
        p.d_.push_back(1.0);
        for (double m : mu) p.d_.push_back(p.d_.back() * m);
        p.mu_ = std::move(mu);
        for (std::size_t i = 0; i < p.mu_.size(); ++i)
            if (p.mu_[i] > 1.0) p.peak_ = i + 1;
        return p;
    }

    std::size_t dim() const { return mu_.size(); }
    const std::vector<double>& d() const { return d_; }
    const std::vector<double>& mu() const { return mu_; }

    /// mu_i for 1 <= i <= dim + 1, with mu_{dim+1} = 0.
    double mu_at(std::size_t i) const { return i >= 1 && i <= mu_.size() ? mu_[i - 1] : 0.0; }

    /// Largest p with mu_p > 1; absent iff d_1 = 1.
    std::optional<std::size_t> peak() const { return peak_; }

    bool log_concave() const {
        for (std::size_t i = 1; i < mu_.size(); ++i)
            if (mu_[i] > mu_[i - 1]) return false;
        return true;
    }

    /// Possible arithmetic degrees: 1 together with every mu_i > 1, ascending.
    std::vector<double> candidate_values() const {
        std::vector<double> c{1.0};
        for (double m : mu_)
            if (m > 1.0) c.push_back(m);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }

private:
    std::vector<double> d_;
    std::vector<double> mu_;
    std::optional<std::size_t> peak_;
};

/// Profile of g_1 x ... x g_d with deg g_i = a_i, a_1 >= ... >= a_d.
inline DegreeProfile product_map_profile(std::span<const unsigned> a) {
    if (a.empty()) throw Error(ErrorKind::Validation, "no factor degrees");
    std::vector<double> mu;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) throw Error(ErrorKind::Validation, "factor degree must be at least 1");
        if (i > 0 && a[i] > a[i - 1]) throw Error(ErrorKind::UnsortedInput, "factor degrees must be nonincreasing");
        mu.push_back(static_cast<double>(a[i]));
    }
    return DegreeProfile::from_mu(std::move(mu));
}

inline DegreeProfile product_map_profile(std::initializer_list<unsigned> a) {
    return product_map_profile(std::span<const unsigned>(a.begin(), a.size()));
}

struct AlphaEstimate {
    /// sequence[i] = max{1, h_{i+1}}^{1/(i+1)}.
    std::vector<double> sequence;
    double alpha_lower = 1.0;
    double alpha_upper = 1.0;
    std::optional<double> classified_value;

    double tail_spread() const { return alpha_upper - alpha_lower; }
};

/// max{1, h}^{1/n} for n >= 1.
inline double alpha_term(double h, std::size_t n) {
    return std::pow(std::max(1.0, h), 1.0 / static_cast<double>(n));
}

/// Snaps the tail to the nearest candidate value c when the tail spread is
/// below 10% of the distance from c to its nearest neighbour.
inline std::optional<double> classify_alpha(double lower, double upper, const DegreeProfile& profile) {
    const auto cand = profile.candidate_values();
    const double mid = 0.5 * (lower + upper);
    std::size_t best = 0;
    for (std::size_t i = 1; i < cand.size(); ++i)
        if (std::fabs(cand[i] - mid) < std::fabs(cand[best] - mid)) best = i;
    double gap = std::numeric_limits<double>::infinity();
    if (best > 0) gap = std::min(gap, cand[best] - cand[best - 1]);
    if (best + 1 < cand.size()) gap = std::min(gap, cand[best + 1] - cand[best]);
    if (upper - lower < 0.1 * gap) return cand[best];
    return std::nullopt;
}

/// heights[n] = h(f^n(x)) for n = 0..L; needs L + 1 >= tail_window + 2.
inline AlphaEstimate alpha_estimate(std::span<const double> heights, std::size_t tail_window,
                                    const std::optional<DegreeProfile>& profile = std::nullopt) {
    if (tail_window == 0) throw Error(ErrorKind::Validation, "tail window must be positive");
    if (heights.size() < tail_window + 2)
        throw Error(ErrorKind::OrbitTooShort, "orbit has " + std::to_string(heights.size()) + " records, need " +
                                                  std::to_string(tail_window + 2));
    AlphaEstimate est;
    for (std::size_t n = 1; n < heights.size(); ++n) est.sequence.push_back(alpha_term(heights[n], n));
    auto tail = std::span<const double>(est.sequence).last(tail_window);
    auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    est.alpha_lower = *lo;
    est.alpha_upper = *hi;
    if (profile) est.classified_value = classify_alpha(est.alpha_lower, est.alpha_upper, *profile);
    return est;
}

struct RecursionViolation {
    std::size_t n = 0;
    std::size_t k = 0;
    double ratio = 0.0;
};

struct RecursionReport {
    double best_C = std::numeric_limits<double>::infinity();
    std::size_t best_n = 0;
    std::size_t best_k = 0;
    std::size_t pairs_checked = 0;
    std::vector<RecursionViolation> violations;
    /// Number of subsampled terms H_0..H_{J-1}.
    std::size_t horizon = 0;
};

struct RecursionOptions {
    double mu_l = 1.0;
    double mu_next = 0.0;
    unsigned m = 1;
    double eta = 0.9;
    std::size_t n0 = 1;
    std::size_t s = 0;
    double floor = 1e-3;
};

/// Checks H_{n+k} >= C (eta mu_l)^{mk} H_n on H_j = max{1, h_{mj+s}} for all
/// n >= n0, k >= 0 inside the horizon. best_C is the smallest observed
/// ratio; pairs with ratio below the floor are violations.
inline RecursionReport recursion_verify(std::span<const double> heights, const RecursionOptions& opt) {
    if (!(opt.eta > 0.0 && opt.eta < 1.0)) throw Error(ErrorKind::Validation, "eta must lie in (0, 1)");
    if (opt.m == 0) throw Error(ErrorKind::Validation, "m must be positive");
    if (!(opt.mu_l > 0.0)) throw Error(ErrorKind::Validation, "mu_l must be positive");
    if (opt.mu_next > opt.mu_l) throw Error(ErrorKind::Validation, "mu_{l+1} exceeds mu_l");
    std::vector<double> logH;
    for (std::size_t i = opt.s; i < heights.size(); i += opt.m) logH.push_back(std::log(std::max(1.0, heights[i])));
    if (logH.size() < opt.n0 + 2)
        throw Error(ErrorKind::OrbitTooShort, "subsampled orbit has " + std::to_string(logH.size()) + " terms, need " +
                                                  std::to_string(opt.n0 + 2));
    RecursionReport rep;
    rep.horizon = logH.size();
    const double log_step = static_cast<double>(opt.m) * std::log(opt.eta * opt.mu_l);
    const double log_floor = std::log(opt.floor);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = opt.n0; n < logH.size(); ++n) {
        for (std::size_t k = 0; n + k < logH.size(); ++k) {
            const double lr = logH[n + k] - static_cast<double>(k) * log_step - logH[n];
            ++rep.pairs_checked;
            if (lr < best) {
                best = lr;
                rep.best_n = n;
                rep.best_k = k;
            }
            if (lr < log_floor) rep.violations.push_back({n, k, std::exp(lr)});
        }
    }
    rep.best_C = std::exp(best);
    return rep;
}

struct GenericnessEntry {
    std::vector<std::size_t> hits;
    bool non_generic_witness = false;
};

/// Hit indices of the orbit on each closed set. A set is flagged when its
/// count exceeds the threshold and it is still hit in the final third.
inline std::vector<GenericnessEntry> genericness_report(std::span<const ProjPoint> orbit,
                                                        std::span<const SubschemeSpec> closed_sets,
                                                        std::size_t threshold = 2) {
    std::vector<GenericnessEntry> out;
    const std::size_t final_third = orbit.size() - orbit.size() / 3;
    for (const auto& Z : closed_sets) {
        GenericnessEntry e;
        for (std::size_t n = 0; n < orbit.size(); ++n)
            if (Z.contains(orbit[n])) e.hits.push_back(n);
        e.non_generic_witness = e.hits.size() > threshold && !e.hits.empty() && e.hits.back() >= final_third;
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace orbitlab
