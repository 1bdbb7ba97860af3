#ifndef PROX_RATIONAL_HPP
#define PROX_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prox {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonical form). All core computation in this library
/// is exact; no floating point is used outside reporting.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    return Rational(num, den);
}

inline Integer numerator(const Rational& r) {
    return Integer(boost::multiprecision::numerator(r));
}

inline Integer denominator(const Rational& r) {
    return Integer(boost::multiprecision::denominator(r));
}

/// Parse "p", "-p", or "p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    try {
        return Rational(std::string(s));
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad input '" + std::string(s) + "'");
    }
}

/// Serialize as "p" or "p/q", decimal-free.
inline std::string to_string(const Rational& r) {
    return r.str();
}

struct RationalHash {
    size_t operator()(const Rational& r) const noexcept {
        const auto& q = r.backend().data();
        size_t h = 1469598103934665603ull;
        auto mix = [&h](mpz_srcptr z) {
            h ^= static_cast<size_t>(mpz_sgn(z));
            h *= 1099511628211ull;
            size_t n = mpz_size(z);
            for (size_t i = 0; i < n; ++i) {
                h ^= mpz_getlimbn(z, i);
                h *= 1099511628211ull;
            }
        };
        mix(mpq_numref(q));
        mix(mpq_denref(q));
        return h;
    }
};

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
    return q;
}

/// floor(r) for any rational r.
inline Integer floor_rat(const Rational& r) {
    return floor_div(numerator(r), denominator(r));
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt: negative");
    Integer r;
    mpz_sqrt(r.backend().data(), n.backend().data());
    return r;
}

/// Exact rational square root, if one exists.
inline std::optional<Rational> sqrt_exact(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer num = numerator(r), den = denominator(r);
    Integer sn = isqrt(num), sd = isqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

}  // namespace prox

#endif
