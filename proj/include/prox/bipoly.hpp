#ifndef PROX_BIPOLY_HPP
#define PROX_BIPOLY_HPP

#include "prox/unipoly.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prox {

/// Sparse bivariate polynomial sum c_{ij} u^i v^j with rational coefficients.
/// The two variables are positional; call them (x, x') for curve equations
/// and (x, y) for conics. No explicit zero coefficients are stored.
class BiPoly {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, Rational>;

    BiPoly() = default;

    static BiPoly zero() { return BiPoly(); }

    static BiPoly constant(const Rational& v) {
        BiPoly p;
        p.set(0, 0, v);
        return p;
    }

    static BiPoly monomial(int i, int j, const Rational& coeff = Rational(1)) {
        BiPoly p;
        p.set(i, j, coeff);
        return p;
    }

    /// Lift a univariate polynomial into the first variable.
    static BiPoly from_first(const UniPoly& p) {
        BiPoly out;
        for (int i = 0; i <= p.degree(); ++i) out.set(i, 0, p.coeff(i));
        return out;
    }

    /// Lift a univariate polynomial into the second variable.
    static BiPoly from_second(const UniPoly& p) {
        BiPoly out;
        for (int j = 0; j <= p.degree(); ++j) out.set(0, j, p.coeff(j));
        return out;
    }

    bool is_zero() const { return m_.empty(); }

    bool is_constant() const {
        return m_.empty() || (m_.size() == 1 && m_.begin()->first == Key{0, 0});
    }

    const Map& terms() const { return m_; }

    void set(int i, int j, const Rational& v) {
        if (v == 0)
            m_.erase({i, j});
        else
            m_[{i, j}] = v;
    }

    void add(int i, int j, const Rational& v) {
        auto it = m_.find({i, j});
        if (it == m_.end()) {
            if (v != 0) m_.emplace(Key{i, j}, v);
        } else {
            it->second += v;
            if (it->second == 0) m_.erase(it);
        }
    }

    const Rational& coeff(int i, int j) const {
        static const Rational kZero(0);
        auto it = m_.find({i, j});
        return it == m_.end() ? kZero : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [k, v] : m_) d = std::max(d, k.first + k.second);
        return d;
    }

    int degree_first() const {
        int d = -1;
        for (const auto& [k, v] : m_) d = std::max(d, k.first);
        return d;
    }

    int degree_second() const {
        int d = -1;
        for (const auto& [k, v] : m_) d = std::max(d, k.second);
        return d;
    }

    /// Leading term under lexicographic monomial order with the first
    /// variable dominant.
    std::pair<Key, Rational> leading_lex() const {
        if (m_.empty()) throw std::domain_error("BiPoly::leading_lex: zero polynomial");
        return *m_.rbegin();
    }

    Rational eval(const Rational& u, const Rational& v) const {
        // Horner over the second variable of per-degree slices would need a
        // dense view; the polynomials here are small, so direct powers do.
        Rational acc(0);
        for (const auto& [k, c] : m_) {
            Rational t = c;
            for (int a = 0; a < k.first; ++a) t *= u;
            for (int a = 0; a < k.second; ++a) t *= v;
            acc += t;
        }
        return acc;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly out = a;
        for (const auto& [k, v] : b.m_) out.add(k.first, k.second, v);
        return out;
    }

    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly out = a;
        for (const auto& [k, v] : b.m_) out.add(k.first, k.second, -v);
        return out;
    }

    friend BiPoly operator-(const BiPoly& a) {
        BiPoly out;
        for (const auto& [k, v] : a.m_) out.m_.emplace(k, -v);
        return out;
    }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ka, va] : a.m_)
            for (const auto& [kb, vb] : b.m_)
                out.add(ka.first + kb.first, ka.second + kb.second, va * vb);
        return out;
    }

    friend BiPoly operator*(const BiPoly& a, const Rational& s) {
        BiPoly out;
        if (s == 0) return out;
        for (const auto& [k, v] : a.m_) out.m_.emplace(k, v * s);
        return out;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.m_ == b.m_; }

    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    /// Coefficients as univariate polynomials in the first variable, indexed
    /// by the degree of the second variable.
    std::vector<UniPoly> second_var_coeffs() const {
        std::vector<std::vector<Rational>> raw(static_cast<size_t>(degree_second()) + 1);
        if (is_zero()) return {};
        for (const auto& [k, v] : m_) {
            auto& row = raw[static_cast<size_t>(k.second)];
            if (static_cast<int>(row.size()) <= k.first)
                row.resize(static_cast<size_t>(k.first) + 1, Rational(0));
            row[static_cast<size_t>(k.first)] = v;
        }
        std::vector<UniPoly> out;
        out.reserve(raw.size());
        for (auto& row : raw) out.emplace_back(std::move(row));
        return out;
    }

    static BiPoly from_second_var_coeffs(const std::vector<UniPoly>& coeffs) {
        BiPoly out;
        for (size_t j = 0; j < coeffs.size(); ++j)
            for (int i = 0; i <= coeffs[j].degree(); ++i)
                out.set(i, static_cast<int>(j), coeffs[j].coeff(i));
        return out;
    }

    std::string str(const std::string& u = "x", const std::string& v = "x'") const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = m_.rbegin(); it != m_.rend(); ++it) {
            const auto& [k, c] = *it;
            if (!out.empty()) out += (c > 0) ? " + " : " - ";
            else if (c < 0) out += "-";
            Rational a = abs(c);
            bool unit = (a == 1) && (k.first > 0 || k.second > 0);
            if (!unit) out += to_string(a);
            auto var = [&](const std::string& name, int e) {
                if (e == 0) return;
                if (out.back() != '-' && out.back() != ' ' && !unit) out += "*";
                unit = false;
                out += name;
                if (e > 1) out += "^" + std::to_string(e);
            };
            var(u, k.first);
            var(v, k.second);
        }
        return out;
    }

private:
    Map m_;
};

/// Rational content: the positive rational c such that f/c has coprime
/// integer coefficients.
inline Rational bipoly_content(const BiPoly& f) {
    if (f.is_zero()) throw std::domain_error("bipoly_content: zero polynomial");
    Integer g(0), l(1);
    for (const auto& [k, v] : f.terms()) {
        g = gcd(g, numerator(v));
        l = lcm(l, denominator(v));
    }
    return Rational(abs(g), l);
}

/// f divided by its content, with the lex-leading coefficient made positive.
inline BiPoly primitive_part(const BiPoly& f) {
    if (f.is_zero()) throw std::domain_error("primitive_part: zero polynomial");
    Rational c = bipoly_content(f);
    if (f.leading_lex().second < 0) c = -c;
    return f * (Rational(1) / c);
}

/// Canonical form used for curve identity tests: integer-primitive with
/// positive lex-leading coefficient. Same as primitive_part; named for the
/// call sites that canonicalize rather than strip content.
inline BiPoly canonical_form(const BiPoly& f) { return primitive_part(f); }

namespace detail {

// View of a BiPoly as a univariate polynomial in the second variable with
// UniPoly coefficients (polynomials in the first variable).
using XPrimeView = std::vector<UniPoly>;

inline int view_degree(const XPrimeView& v) { return static_cast<int>(v.size()) - 1; }

inline void view_trim(XPrimeView& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

// Content with respect to the second variable: monic gcd (in the first
// variable) of all coefficient polynomials.
inline UniPoly view_content(const XPrimeView& v) {
    UniPoly g;
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : unipoly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) throw std::domain_error("view_content: zero polynomial");
    return g * (Rational(1) / g.leading());
}

inline XPrimeView view_divide_content(const XPrimeView& v, const UniPoly& content) {
    XPrimeView out;
    out.reserve(v.size());
    for (const auto& c : v) {
        if (c.is_zero()) {
            out.emplace_back();
            continue;
        }
        auto [q, r] = c.divmod(content);
        if (!r.is_zero()) throw std::logic_error("view_divide_content: inexact");
        out.push_back(std::move(q));
    }
    return out;
}

// Fraction-free reduction: repeatedly scale by the divisor's leading
// coefficient and cancel the top term. Returns the final remainder; if
// `quotient` is non-null it receives the pseudo-quotient Q and `scale_power`
// the number k such that lc(d)^k * f = Q*d + r.
inline XPrimeView pseudo_remainder(XPrimeView f, const XPrimeView& d, XPrimeView* quotient = nullptr,
                                   int* scale_power = nullptr) {
    int dd = view_degree(d);
    if (dd < 0) throw std::domain_error("pseudo_remainder: zero divisor");
    const UniPoly& lc = d[static_cast<size_t>(dd)];
    int k = 0;
    XPrimeView q;
    if (quotient && view_degree(f) >= dd)
        q.assign(static_cast<size_t>(view_degree(f) - dd) + 1, UniPoly());
    while (view_degree(f) >= dd) {
        int shift = view_degree(f) - dd;
        UniPoly top = f.back();
        // f <- lc*f - top * v^shift * d
        for (auto& c : f) c = lc * c;
        if (quotient) {
            for (auto& c : q) c = lc * c;
            q[static_cast<size_t>(shift)] += top;
        }
        ++k;
        for (int j = 0; j <= dd; ++j)
            f[static_cast<size_t>(j + shift)] -= top * d[static_cast<size_t>(j)];
        view_trim(f);
    }
    if (quotient) *quotient = std::move(q);
    if (scale_power) *scale_power = k;
    return f;
}

}  // namespace detail

/// Exact divisibility test over the rationals in two variables.
inline bool bipoly_divides(const BiPoly& d, const BiPoly& f) {
    if (d.is_zero()) throw std::domain_error("bipoly_divides: zero divisor");
    if (f.is_zero()) return true;
    if (d.degree_second() == 0) {
        // Divisor is univariate in the first variable.
        auto dc = d.second_var_coeffs();
        const UniPoly& du = dc[0];
        if (du.is_constant()) return true;
        for (const auto& c : f.second_var_coeffs())
            if (!c.is_zero() && !du.divides(c)) return false;
        return true;
    }
    auto fv = f.second_var_coeffs();
    auto dv = d.second_var_coeffs();
    if (detail::view_degree(fv) < detail::view_degree(dv)) return false;
    UniPoly cont_d = detail::view_content(dv);
    UniPoly cont_f = detail::view_content(fv);
    if (!cont_d.is_constant() && !cont_d.divides(cont_f)) return false;
    auto pp_d = detail::view_divide_content(dv, cont_d);
    // pp_d is primitive in the second variable, so a vanishing pseudo
    // remainder certifies divisibility (Gauss).
    auto r = detail::pseudo_remainder(fv, pp_d);
    return r.empty();
}

/// Exact quotient f/d; throws if the division is not exact.
inline BiPoly bipoly_divide_exact(const BiPoly& f, const BiPoly& d) {
    if (d.is_zero()) throw std::domain_error("bipoly_divide_exact: zero divisor");
    if (f.is_zero()) return BiPoly();
    if (d.degree_second() == 0) {
        auto dc = d.second_var_coeffs();
        const UniPoly& du = dc[0];
        auto fv = f.second_var_coeffs();
        std::vector<UniPoly> qv;
        qv.reserve(fv.size());
        for (const auto& c : fv) {
            if (c.is_zero()) {
                qv.emplace_back();
                continue;
            }
            auto [q, r] = c.divmod(du);
            if (!r.is_zero()) throw std::domain_error("bipoly_divide_exact: inexact");
            qv.push_back(std::move(q));
        }
        return BiPoly::from_second_var_coeffs(qv);
    }
    auto fv = f.second_var_coeffs();
    auto dv = d.second_var_coeffs();
    UniPoly cont_d = detail::view_content(dv);
    auto pp_d = detail::view_divide_content(dv, cont_d);
    detail::XPrimeView q;
    int k = 0;
    auto r = detail::pseudo_remainder(fv, pp_d, &q, &k);
    if (!r.empty()) throw std::domain_error("bipoly_divide_exact: inexact");
    // lc(pp_d)^k * f = q * pp_d, so f/d = q / (lc^k * cont_d).
    UniPoly scale = UniPoly::constant(Rational(1));
    const UniPoly& lc = pp_d[pp_d.size() - 1];
    for (int i = 0; i < k; ++i) scale *= lc;
    scale *= cont_d;
    std::vector<UniPoly> qv;
    qv.reserve(q.size());
    for (const auto& c : q) {
        if (c.is_zero()) {
            qv.emplace_back();
            continue;
        }
        auto [qq, rr] = c.divmod(scale);
        if (!rr.is_zero()) throw std::domain_error("bipoly_divide_exact: inexact quotient scale");
        qv.push_back(std::move(qq));
    }
    return BiPoly::from_second_var_coeffs(qv);
}

/// Greatest common divisor in two variables over the rationals, computed by
/// a fraction-free remainder sequence in the second variable with
/// primitive-part extraction at every step. The result is in canonical form
/// (integer-primitive, positive lex-leading coefficient).
inline BiPoly bipoly_gcd(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() && g.is_zero()) throw std::domain_error("bipoly_gcd: both zero");
    if (f.is_zero()) return canonical_form(g);
    if (g.is_zero()) return canonical_form(f);
    if (f.degree_second() == 0 && g.degree_second() == 0) {
        UniPoly a = f.second_var_coeffs()[0];
        UniPoly b = g.second_var_coeffs()[0];
        return canonical_form(BiPoly::from_first(unipoly_gcd(a, b)));
    }
    if (f.degree_second() == 0 || g.degree_second() == 0) {
        // One side is univariate in the first variable; it can only share its
        // own factors with the other side's content.
        const BiPoly& uni = (f.degree_second() == 0) ? f : g;
        const BiPoly& biv = (f.degree_second() == 0) ? g : f;
        UniPoly a = uni.second_var_coeffs()[0];
        UniPoly cont = detail::view_content(biv.second_var_coeffs());
        if (cont.is_constant() || a.is_constant())
            return canonical_form(BiPoly::constant(Rational(1)));
        return canonical_form(BiPoly::from_first(unipoly_gcd(a, cont)));
    }
    auto fv = f.second_var_coeffs();
    auto gv = g.second_var_coeffs();
    UniPoly cont_f = detail::view_content(fv);
    UniPoly cont_g = detail::view_content(gv);
    auto a = detail::view_divide_content(fv, cont_f);
    auto b = detail::view_divide_content(gv, cont_g);
    if (detail::view_degree(a) < detail::view_degree(b)) std::swap(a, b);
    while (true) {
        auto r = detail::pseudo_remainder(a, b);
        if (r.empty()) break;
        UniPoly cr = detail::view_content(r);
        a = std::move(b);
        b = detail::view_divide_content(r, cr);
    }
    BiPoly pp_gcd = BiPoly::from_second_var_coeffs(b);
    if (pp_gcd.degree_second() == 0) pp_gcd = BiPoly::constant(Rational(1));
    UniPoly cont_gcd = (cont_f.is_constant() || cont_g.is_constant())
                           ? UniPoly::constant(Rational(1))
                           : unipoly_gcd(cont_f, cont_g);
    return canonical_form(BiPoly::from_first(cont_gcd) * pp_gcd);
}

}  // namespace prox

#endif
