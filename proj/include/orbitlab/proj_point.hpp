#pragma once

#include "orbitlab/error.hpp"
#include "orbitlab/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orbitlab {

/// A point of P^N(Q) in canonical form: coprime integer coordinates, not
/// all zero, first nonzero coordinate positive. The canonical form makes
/// projective equality plain coordinate equality.
class ProjPoint {
public:
    ProjPoint() = default;

    /// Normalises an integer vector; throws AllZero.
    static ProjPoint from_integers(std::vector<Integer> coords);

    const std::vector<Integer>& coords() const { return coords_; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t dim() const { return coords_.empty() ? 0 : coords_.size() - 1; }
    std::size_t size() const { return coords_.size(); }

    /// Bit length of the largest coordinate.
    std::size_t bits() const {
        std::size_t b = 0;
        for (const auto& c : coords_) b = std::max(b, bit_length(c));
        return b;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ':';
            s += coords_[i].get_str();
        }
        return s + ")";
    }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

private:
    std::vector<Integer> coords_;
};

inline ProjPoint ProjPoint::from_integers(std::vector<Integer> coords) {
    Integer g = 0;
    for (const auto& c : coords) g = gcd(g, c);
    if (g == 0) throw Error(ErrorKind::AllZero, "every coordinate is zero");
    for (const auto& c : coords) {
        if (c != 0) {
            if (c < 0) g = -g;
            break;
        }
    }
    for (auto& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    ProjPoint p;
    p.coords_ = std::move(coords);
    return p;
}

inline ProjPoint normalize_point(std::span<const Rational> raw) {
    Integer den = 1;
    for (const auto& r : raw) den = lcm(den, r.get_den());
    std::vector<Integer> coords;
    coords.reserve(raw.size());
    for (const auto& r : raw) coords.push_back(Integer(r.get_num() * (den / r.get_den())));
    return ProjPoint::from_integers(std::move(coords));
}

inline ProjPoint normalize_point(std::initializer_list<Rational> raw) {
    return normalize_point(std::span<const Rational>(raw.begin(), raw.size()));
}

/// Convenience for integer literals: point({3, 7}).
inline ProjPoint point(std::initializer_list<long> coords) {
    std::vector<Integer> v;
    for (long c : coords) v.emplace_back(c);
    return ProjPoint::from_integers(std::move(v));
}

} // namespace orbitlab
