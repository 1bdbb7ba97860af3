#ifndef PROX_INTERVAL_HPP
#define PROX_INTERVAL_HPP

#include "prox/rational.hpp"
#include "prox/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace prox {

/// Closed rational interval for range enclosure; arithmetic is the standard
/// inclusion-monotone interval extension.
struct RatInterval {
    Rational lo, hi;

    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
    }

    static RatInterval point(const Rational& v) { return {v, v}; }

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }

    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }

    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval square() const {
        if (lo >= 0) return {lo * lo, hi * hi};
        if (hi <= 0) return {hi * hi, lo * lo};
        return {Rational(0), std::max(lo * lo, hi * hi)};
    }
};

/// Horner-style interval extension of a univariate polynomial.
inline RatInterval interval_eval(const UniPoly& p, const RatInterval& x) {
    RatInterval acc = RatInterval::point(Rational(0));
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * x + RatInterval::point(*it);
    return acc;
}

/// Enclosure of f(x,y,z) = (x-y)^2 + (phi(x)-z)^2 over a box.
inline RatInterval interval_eval_f(const RatInterval& x, const RatInterval& y,
                                   const RatInterval& z, const UniPoly& phi) {
    return (x - y).square() + (interval_eval(phi, x) - z).square();
}

}  // namespace prox

#endif
