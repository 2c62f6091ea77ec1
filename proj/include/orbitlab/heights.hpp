#pragma once

// Weil heights and explicit local height representatives on P^N(Q).
//
// Local heights are only defined up to bounded functions; the
// representatives fixed here are
//   point y:        log( max|a_i|_v * max|b_j|_v / max_{i<j} |a_i b_j - a_j b_i|_v )
//   hyperplane k:   log( max|a_i|_v / |a_k|_v )
//   forms g_1..g_r: min_i -log( |g_i(a)|_v / max|a_j|_v^{deg g_i} )
// With coprime integer coordinates every finite-place value is an integer
// multiple of log p, and is computed from exact valuations.

#include "orbitlab/error.hpp"
#include "orbitlab/form.hpp"
#include "orbitlab/integer.hpp"
#include "orbitlab/place.hpp"
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

/// A local height value, or +infinity when the point lies on the support.
class LocalHeight {
public:
    static LocalHeight infinite() { return LocalHeight(true, 0.0); }
    static LocalHeight finite(double v) { return LocalHeight(false, v); }

    bool is_infinite() const { return infinite_; }
    double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

    friend LocalHeight operator+(const LocalHeight& a, const LocalHeight& b) {
        if (a.infinite_ || b.infinite_) return infinite();
        return finite(a.value_ + b.value_);
    }
    friend LocalHeight operator*(double k, const LocalHeight& a) { return a.infinite_ ? a : finite(k * a.value_); }
    friend LocalHeight min(const LocalHeight& a, const LocalHeight& b) {
        if (a.infinite_) return b;
        if (b.infinite_) return a;
        return finite(std::min(a.value_, b.value_));
    }

private:
    LocalHeight(bool inf, double v) : infinite_(inf), value_(v) {}
    bool infinite_;
    double value_;
};

struct PointWithMultiplicity {
    ProjPoint point;
    unsigned multiplicity = 1;
};

/// A closed subscheme given either by homogeneous forms or, for
/// zero-dimensional subschemes, by points with multiplicities.
class SubschemeSpec {
public:
    static SubschemeSpec from_forms(std::vector<Form> forms) {
        if (forms.empty()) throw Error(ErrorKind::EmptySpec, "subscheme needs at least one form");
        SubschemeSpec y;
        for (auto& f : forms) {
            if (f.is_zero()) throw Error(ErrorKind::Validation, "zero form in subscheme");
            if (f.nvars() != forms.front().nvars()) throw Error(ErrorKind::DimensionMismatch, "forms in different numbers of variables");
            Integer c = f.content();
            y.forms_.push_back(c == 1 ? f : f.divided_by(c));
        }
        y.dim_ = forms.front().nvars() - 1;
        return y;
    }

    static SubschemeSpec from_points(std::vector<PointWithMultiplicity> pts) {
        if (pts.empty()) throw Error(ErrorKind::EmptySpec, "subscheme needs at least one point");
        SubschemeSpec y;
        y.points_mode_ = true;
        y.dim_ = pts.front().point.dim();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].point.dim() != y.dim_) throw Error(ErrorKind::DimensionMismatch, "points of different dimension");
            if (pts[i].multiplicity == 0) throw Error(ErrorKind::Validation, "multiplicity must be positive");
            for (std::size_t j = 0; j < i; ++j)
                if (pts[j].point == pts[i].point) throw Error(ErrorKind::Validation, "repeated point " + pts[i].point.to_string());
        }
        y.points_ = std::move(pts);
        return y;
    }

    bool points_mode() const { return points_mode_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Form>& forms() const { return forms_; }
    const std::vector<PointWithMultiplicity>& points() const { return points_; }

    /// Exact support membership.
    bool contains(const ProjPoint& x) const {
        if (x.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "point and subscheme dimensions differ");
        if (points_mode_)
            return std::any_of(points_.begin(), points_.end(), [&](const auto& p) { return p.point == x; });
        return std::all_of(forms_.begin(), forms_.end(), [&](const Form& g) { return g.eval(x.coords()) == 0; });
    }

    std::string to_string() const {
        std::string s = "{";
        if (points_mode_) {
            for (std::size_t i = 0; i < points_.size(); ++i) {
                if (i) s += ", ";
                s += points_[i].point.to_string();
                if (points_[i].multiplicity != 1) s += "^" + std::to_string(points_[i].multiplicity);
            }
        } else {
            for (std::size_t i = 0; i < forms_.size(); ++i) {
                if (i) s += ", ";
                s += forms_[i].to_string();
            }
        }
        return s + "}";
    }

private:
    bool points_mode_ = false;
    std::size_t dim_ = 0;
    std::vector<Form> forms_;
    std::vector<PointWithMultiplicity> points_;
};

inline double weil_height(const ProjPoint& x) {
    Integer m = 0;
    for (const auto& c : x.coords())
        if (cmpabs(c, m) > 0) m = abs(c);
    return m == 0 ? 0.0 : log_abs(m);
}

/// Height on a product of projective spaces: sum of the factor heights.
inline double weil_height(std::span<const ProjPoint> xs) {
    double h = 0.0;
    for (const auto& x : xs) h += weil_height(x);
    return h;
}

inline Integer max_abs_coordinate(const ProjPoint& x) {
    Integer m = 0;
    for (const auto& c : x.coords())
        if (cmpabs(c, m) > 0) m = abs(c);
    return m;
}

namespace detail {

inline std::vector<Integer> minors(const ProjPoint& x, const ProjPoint& y) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) out.push_back(Integer(x[i] * y[j] - x[j] * y[i]));
    return out;
}

} // namespace detail

/// Exact finite-place value of the point representative: the p-adic
/// valuation of the gcd of the 2x2 minors; nullopt when x == y.
inline std::optional<unsigned long> local_height_point_valuation(const ProjPoint& x, const ProjPoint& y, const Integer& p) {
    if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "points of different dimension");
    Integer g = 0;
    for (const auto& m : detail::minors(x, y)) g = gcd(g, m);
    if (g == 0) return std::nullopt;
    return valuation(g, p);
}

inline LocalHeight local_height_point(const ProjPoint& x, const ProjPoint& y, const Place& v) {
    if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "points of different dimension");
    if (v.is_finite()) {
        auto n = local_height_point_valuation(x, y, v.prime());
        if (!n) return LocalHeight::infinite();
        return LocalHeight::finite(static_cast<double>(*n) * log_abs(v.prime()));
    }
    Integer mmax = 0;
    for (const auto& m : detail::minors(x, y))
        if (cmpabs(m, mmax) > 0) mmax = abs(m);
    if (mmax == 0) return LocalHeight::infinite();
    return LocalHeight::finite(log_abs(max_abs_coordinate(x)) + log_abs(max_abs_coordinate(y)) - log_abs(mmax));
}

inline LocalHeight local_height_hyperplane(const ProjPoint& x, std::size_t k, const Place& v) {
    if (k >= x.size()) throw Error(ErrorKind::DimensionMismatch, "hyperplane index out of range");
    const Integer& ak = x[k];
    if (ak == 0) return LocalHeight::infinite();
    if (v.is_finite()) return LocalHeight::finite(static_cast<double>(valuation(ak, v.prime())) * log_abs(v.prime()));
    return LocalHeight::finite(log_abs(max_abs_coordinate(x)) - log_abs(ak));
}

/// Forms-mode representative; at finite places the exact value is
/// (min_i val_p g_i(a)) log p.
inline LocalHeight local_height_forms(const ProjPoint& x, const std::vector<Form>& forms, const Place& v) {
    if (forms.empty()) throw Error(ErrorKind::EmptySpec, "no forms");
    LocalHeight best = LocalHeight::infinite();
    const double log_max = v.is_infinite() ? log_abs(max_abs_coordinate(x)) : 0.0;
    for (const auto& g : forms) {
        if (g.nvars() != x.size()) throw Error(ErrorKind::DimensionMismatch, "form and point dimensions differ");
        Integer val = g.eval(x.coords());
        if (val == 0) continue;
        double term = v.is_finite() ? static_cast<double>(valuation(val, v.prime())) * log_abs(v.prime())
                                    : static_cast<double>(g.degree()) * log_max - log_abs(val);
        best = min(best, LocalHeight::finite(term));
    }
    return best;
}

/// lambda_{Y,v}(x) for either mode; points mode sums m_i * lambda_{y_i,v}.
inline LocalHeight local_height(const ProjPoint& x, const SubschemeSpec& Y, const Place& v) {
    if (x.dim() != Y.dim()) throw Error(ErrorKind::DimensionMismatch, "point and subscheme dimensions differ");
    if (!Y.points_mode()) return local_height_forms(x, Y.forms(), v);
    LocalHeight sum = LocalHeight::finite(0.0);
    for (const auto& [y, m] : Y.points()) sum = sum + static_cast<double>(m) * local_height_point(x, y, v);
    return sum;
}

inline LocalHeight local_height_subscheme(const ProjPoint& x, const SubschemeSpec& Y, const Place& v) {
    if (Y.points_mode()) throw Error(ErrorKind::WrongMode, "forms-mode subscheme expected");
    return local_height_forms(x, Y.forms(), v);
}

inline LocalHeight local_height_sum(const ProjPoint& x, const SubschemeSpec& Y, std::span<const Place> S) {
    if (S.empty()) throw Error(ErrorKind::EmptySpec, "empty place set");
    LocalHeight sum = LocalHeight::finite(0.0);
    for (const auto& v : S) sum = sum + local_height(x, Y, v);
    return sum;
}

} // namespace orbitlab
