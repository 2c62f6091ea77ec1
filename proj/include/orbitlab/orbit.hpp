#pragma once

// Forward orbits with exact cycle detection and a coordinate bit budget.

#include "orbitlab/error.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/maps.hpp"
#include "orbitlab/proj_point.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace orbitlab {

enum class StopReason { MaxSteps, Indeterminacy, BitBudget, Cycle };

constexpr std::string_view to_string(StopReason r) {
    switch (r) {
    case StopReason::MaxSteps: return "max_steps";
    case StopReason::Indeterminacy: return "indeterminacy";
    case StopReason::BitBudget: return "bit_budget";
    case StopReason::Cycle: return "cycle";
    }
    return "unknown";
}

/// One orbit step. `points` has one entry on P^N and d entries on (P^1)^d.
struct OrbitRecord {
    std::size_t n = 0;
    std::vector<ProjPoint> points;
    double height = 0.0;
    std::size_t bits = 0;

    const ProjPoint& point() const { return points.front(); }
};

struct OrbitOptions {
    std::size_t n_max = 20;
    std::size_t bit_budget = std::size_t{1} << 20;
    bool stop_on_cycle = true;
};

struct Orbit {
    std::vector<OrbitRecord> records;
    StopReason stop = StopReason::MaxSteps;
    /// For a detected cycle: the first index of the repeated point.
    std::optional<std::size_t> cycle_start;

    std::vector<double> heights() const {
        std::vector<double> h;
        h.reserve(records.size());
        for (const auto& r : records) h.push_back(r.height);
        return h;
    }

    /// Heights h_0..h_{n_max}. A cycled orbit is periodic from
    /// cycle_start, so the missing tail is filled in exactly.
    std::vector<double> heights_through(std::size_t n_max) const {
        std::vector<double> h = heights();
        if (stop != StopReason::Cycle || !cycle_start || h.empty()) return h;
        const std::size_t last = records.back().n;
        const std::size_t period = last - *cycle_start;
        for (std::size_t n = last + 1; n <= n_max; ++n) h.push_back(h[*cycle_start + (n - *cycle_start) % period]);
        if (h.size() > n_max + 1) h.resize(n_max + 1);
        return h;
    }
};

namespace detail {

inline OrbitRecord make_record(std::size_t n, std::vector<ProjPoint> pts) {
    OrbitRecord r;
    r.n = n;
    r.height = weil_height(std::span<const ProjPoint>(pts));
    for (const auto& p : pts) r.bits = std::max(r.bits, p.bits());
    r.points = std::move(pts);
    return r;
}

template <typename Step>
Orbit iterate(std::vector<ProjPoint> start, const OrbitOptions& opt, Step step) {
    if (opt.bit_budget < 64) throw Error(ErrorKind::Validation, "bit budget must be at least 64");
    Orbit orbit;
    std::map<std::vector<ProjPoint>, std::size_t> seen;
    std::vector<ProjPoint> cur = std::move(start);
    for (std::size_t n = 0;; ++n) {
        if (n > 0) {
            auto next = step(cur);
            if (!next) {
                orbit.stop = StopReason::Indeterminacy;
                return orbit;
            }
            cur = std::move(*next);
        }
        orbit.records.push_back(make_record(n, cur));
        if (opt.stop_on_cycle) {
            auto [it, inserted] = seen.emplace(cur, n);
            if (!inserted) {
                orbit.stop = StopReason::Cycle;
                orbit.cycle_start = it->second;
                return orbit;
            }
        }
        if (orbit.records.back().bits > opt.bit_budget) {
            orbit.stop = StopReason::BitBudget;
            return orbit;
        }
        if (n >= opt.n_max) {
            orbit.stop = StopReason::MaxSteps;
            return orbit;
        }
    }
}

} // namespace detail

inline Orbit iterate_orbit(const RationalSelfMap& f, const ProjPoint& x0, const OrbitOptions& opt = {}) {
    if (x0.dim() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "start point dimension differs from map dimension");
    return detail::iterate({x0}, opt, [&](const std::vector<ProjPoint>& cur) -> std::optional<std::vector<ProjPoint>> {
        auto y = f.evaluate(cur.front());
        if (!y) return std::nullopt;
        return std::vector<ProjPoint>{std::move(*y)};
    });
}

inline Orbit iterate_orbit(const P1Morphism& f, const ProjPoint& x0, const OrbitOptions& opt = {}) {
    if (x0.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "start point is not on P^1");
    return detail::iterate({x0}, opt, [&](const std::vector<ProjPoint>& cur) -> std::optional<std::vector<ProjPoint>> {
        return std::vector<ProjPoint>{f.evaluate(cur.front())};
    });
}

inline Orbit iterate_orbit(const ProductMap& f, std::vector<ProjPoint> x0, const OrbitOptions& opt = {}) {
    if (x0.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "start tuple size differs from factor count");
    for (const auto& p : x0)
        if (p.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "product maps act on (P^1)^d");
    return detail::iterate(std::move(x0), opt, [&](const std::vector<ProjPoint>& cur) -> std::optional<std::vector<ProjPoint>> {
        return f.evaluate(cur);
    });
}

} // namespace orbitlab
