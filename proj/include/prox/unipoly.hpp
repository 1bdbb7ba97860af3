#ifndef PROX_UNIPOLY_HPP
#define PROX_UNIPOLY_HPP

#include "prox/rational.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace prox {

/// Dense univariate polynomial with rational coefficients.
/// coeffs[i] is the coefficient of x^i; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient vector).
class UniPoly {
public:
    UniPoly() = default;

    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static UniPoly zero() { return UniPoly(); }

    static UniPoly constant(Rational v) { return UniPoly({std::move(v)}); }

    /// x^k with unit coefficient.
    static UniPoly monomial(int k, Rational coeff = Rational(1)) {
        if (coeff == 0) return UniPoly();
        std::vector<Rational> c(static_cast<size_t>(k) + 1, Rational(0));
        c.back() = std::move(coeff);
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<Rational>& coeffs() const { return c_; }

    /// Coefficient of x^i (zero beyond the stored range).
    const Rational& coeff(int i) const {
        static const Rational kZero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<size_t>(i)];
    }

    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("UniPoly::leading: zero polynomial");
        return c_.back();
    }

    /// Horner evaluation.
    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a) {
        std::vector<Rational> c(a.c_);
        for (auto& x : c) x = -x;
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const UniPoly& a, const Rational& s) {
        if (s == 0) return UniPoly();
        std::vector<Rational> c(a.c_);
        for (auto& x : c) x *= s;
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const Rational& s, const UniPoly& a) { return a * s; }

    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    bool is_constant() const { return c_.size() <= 1; }

    /// Quotient and remainder over the rationals.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("UniPoly::divmod: zero divisor");
        UniPoly r = *this;
        std::vector<Rational> q;
        int dd = d.degree();
        if (degree() >= dd) q.assign(static_cast<size_t>(degree() - dd) + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= dd) {
            int k = r.degree() - dd;
            Rational f = r.leading() / d.leading();
            q[static_cast<size_t>(k)] = f;
            r -= UniPoly::monomial(k, f) * d;
        }
        return {UniPoly(std::move(q)), std::move(r)};
    }

    bool divides(const UniPoly& f) const { return f.divmod(*this).second.is_zero(); }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& ci = coeff(i);
            if (ci == 0) continue;
            if (!out.empty()) out += (ci > 0) ? " + " : " - ";
            else if (ci < 0) out += "-";
            Rational a = abs(ci);
            if (a != 1 || i == 0) out += to_string(a);
            if (i > 0) {
                if (a != 1) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Exact value of p at x. Kept as a free function to match the operation
/// vocabulary used throughout; forwards to Horner evaluation.
inline Rational poly_eval(const UniPoly& p, const Rational& x) { return p.eval(x); }

/// Expand p(a*x + b) exactly.
inline UniPoly poly_compose_affine(const UniPoly& p, const Rational& a, const Rational& b) {
    // Horner in the inner polynomial a*x + b.
    UniPoly inner({b, a});
    UniPoly acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = acc * inner + UniPoly::constant(*it);
    }
    return acc;
}

/// Monic gcd over the rationals; gcd(0,0) is rejected.
inline UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("unipoly_gcd: both zero");
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a * (Rational(1) / a.leading());
}

}  // namespace prox

#endif
