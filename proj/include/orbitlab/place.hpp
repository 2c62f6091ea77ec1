#pragma once

// Places of Q and the normalised absolute values |.|_v.
//
// For a number field K the normalisation would be
// |a|_v = |N_{K_v/Q_p}(a)|_p^{1/[K:Q]}; only K = Q is implemented, where it
// reduces to the usual |a|_inf and |a|_p = p^{-val_p(a)}.

#include "orbitlab/error.hpp"
#include "orbitlab/integer.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {

class Place {
public:
    static Place infinite() { return Place(Integer(0)); }

    static Place finite(const Integer& p) {
        if (!is_prime(p)) throw Error(ErrorKind::NotPrime, p.get_str() + " is not prime");
        return Place(p);
    }

    bool is_infinite() const { return prime_ == 0; }
    bool is_finite() const { return prime_ != 0; }

    /// Only meaningful for finite places.
    const Integer& prime() const { return prime_; }

    std::string to_string() const { return is_infinite() ? std::string("inf") : prime_.get_str(); }

    friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
    // The archimedean place sorts first.
    friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

private:
    explicit Place(Integer p) : prime_(std::move(p)) {}
    Integer prime_; // 0 encodes the infinite place
};

/// Integer p-adic valuation of a nonzero rational.
inline long valuation(const Rational& a, const Integer& p) {
    if (a == 0) throw Error(ErrorKind::ZeroInput, "valuation of zero");
    return static_cast<long>(valuation(a.get_num(), p)) - static_cast<long>(valuation(a.get_den(), p));
}

inline double abs_value(const Place& v, const Rational& a) {
    if (a == 0) throw Error(ErrorKind::ZeroInput, "|0|_v is not represented");
    if (v.is_infinite()) return std::fabs(a.get_d());
    const long n = valuation(a, v.prime());
    return std::pow(v.prime().get_d(), static_cast<double>(-n));
}

/// log|a|_v for every place where it is nonzero, kept in exact form:
/// the archimedean entry as the rational |a|, the finite ones as valuations.
class LogAbsLedger {
public:
    LogAbsLedger() = default;
    LogAbsLedger(Rational magnitude, std::map<Integer, long> valuations)
        : magnitude_(std::move(magnitude)), valuations_(std::move(valuations)) {}

    const Rational& magnitude() const { return magnitude_; }
    const std::map<Integer, long>& valuations() const { return valuations_; }

    bool empty() const { return magnitude_ == 1 && valuations_.empty(); }

    /// log|a|_v; zero for places not in the ledger.
    double log_value(const Place& v) const {
        if (v.is_infinite()) return log_abs(magnitude_);
        auto it = valuations_.find(v.prime());
        if (it == valuations_.end()) return 0.0;
        return -static_cast<double>(it->second) * log_abs(it->first);
    }

    std::vector<std::pair<Place, double>> entries() const {
        std::vector<std::pair<Place, double>> out;
        if (magnitude_ != 1) out.emplace_back(Place::infinite(), log_value(Place::infinite()));
        for (const auto& [p, n] : valuations_) {
            out.emplace_back(Place::finite(p), -static_cast<double>(n) * log_abs(p));
        }
        return out;
    }

    /// Sum over all places, in floating point.
    double sum() const {
        double s = log_abs(magnitude_);
        for (const auto& [p, n] : valuations_) s -= static_cast<double>(n) * log_abs(p);
        return s;
    }

    /// Product formula in valuation arithmetic: |a| == prod p^{val_p(a)}.
    bool product_formula_exact() const {
        Rational prod = 1;
        for (const auto& [p, n] : valuations_) {
            Integer pk = ipow(p, static_cast<unsigned long>(n < 0 ? -n : n));
            if (n >= 0)
                prod *= Rational(pk);
            else
                prod /= Rational(pk);
        }
        return prod == magnitude_;
    }

private:
    Rational magnitude_ = 1;
    std::map<Integer, long> valuations_;
};

inline LogAbsLedger log_abs_ledger(const Rational& a) {
    if (a == 0) throw Error(ErrorKind::ZeroInput, "log|0|_v is -infinity");
    Rational mag = abs(a);
    mag.canonicalize();
    std::map<Integer, long> vals;
    for (const auto& [p, e] : factor_integer(mag.get_num())) vals[p] += static_cast<long>(e);
    for (const auto& [p, e] : factor_integer(mag.get_den())) vals[p] -= static_cast<long>(e);
    return LogAbsLedger(std::move(mag), std::move(vals));
}

} // namespace orbitlab
