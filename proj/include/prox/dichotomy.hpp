#ifndef PROX_DICHOTOMY_HPP
#define PROX_DICHOTOMY_HPP

#include "prox/bipoly.hpp"
#include "prox/geom.hpp"

#include <array>
#include <optional>
#include <stdexcept>

namespace prox {

/// Two ordered triples of plane points. The first triple must be pairwise
/// distinct; the second is unconstrained.
class TriplePair {
public:
    TriplePair(std::array<Point2, 3> p, std::array<Point2, 3> p_prime)
        : p_(std::move(p)), pp_(std::move(p_prime)) {
        if (p_[0] == p_[1] || p_[0] == p_[2] || p_[1] == p_[2])
            throw std::invalid_argument("TriplePair: first triple must be pairwise distinct");
    }

    const std::array<Point2, 3>& p() const { return p_; }
    const std::array<Point2, 3>& p_prime() const { return pp_; }

private:
    std::array<Point2, 3> p_, pp_;
};

/// The linear system behind the distance equations: rows of A are p_i - p_3,
/// rows of B are p_i' - p_3', u and v hold squared-norm differences, and,
/// when B is invertible, w = (1/2) B^{-1} (v - u).
struct SigmaSystem {
    Mat2 A, B;
    Point2 u, v;
    std::optional<Point2> w;
};

inline SigmaSystem build_sigma_system(const TriplePair& tp) {
    const auto& p = tp.p();
    const auto& q = tp.p_prime();
    SigmaSystem s;
    Point2 r1 = p[0] - p[2], r2 = p[1] - p[2];
    Point2 s1 = q[0] - q[2], s2 = q[1] - q[2];
    s.A = {r1.x, r1.y, r2.x, r2.y};
    s.B = {s1.x, s1.y, s2.x, s2.y};
    s.u = {p[0].norm2() - p[2].norm2(), p[1].norm2() - p[2].norm2()};
    s.v = {q[0].norm2() - q[2].norm2(), q[1].norm2() - q[2].norm2()};
    if (s.B.det() != 0) s.w = rat(1, 2) * (s.B.inverse().apply(s.v - s.u));
    return s;
}

/// Outcome of the congruence/conic dichotomy. For ConicPair, sigma lives in
/// the (x, y) plane of q and sigma_prime in the (x', y') plane of q'. For
/// VerticalLines, the coordinates are taken along each triple's own line,
/// measured from p_3 (resp. p_3').
struct SigmaOutcome {
    enum class Kind { Congruent, ConicPair, VerticalLines, Empty };

    Kind kind;
    std::optional<Isometry> witness;  // Congruent
    BiPoly sigma, sigma_prime;        // ConicPair
    Rational x0, x0_prime;            // VerticalLines

    static SigmaOutcome congruent(Isometry w) {
        SigmaOutcome o{Kind::Congruent};
        o.witness = std::move(w);
        return o;
    }
    static SigmaOutcome conic(BiPoly s, BiPoly sp) {
        SigmaOutcome o{Kind::ConicPair};
        o.sigma = std::move(s);
        o.sigma_prime = std::move(sp);
        return o;
    }
    static SigmaOutcome vertical(Rational x, Rational xp) {
        SigmaOutcome o{Kind::VerticalLines};
        o.x0 = std::move(x);
        o.x0_prime = std::move(xp);
        return o;
    }
    static SigmaOutcome empty() { return SigmaOutcome{Kind::Empty}; }
};

/// Thrown when the collinear normalization would need an irrational rigid
/// motion; only rational-length collinear configurations are supported.
struct IrrationalNormalizerError : std::domain_error {
    IrrationalNormalizerError()
        : std::domain_error("collinear normalization requires an irrational rigid motion") {}
};

/// If some isometry maps p_i to p_i' for i = 1,2,3, return one (the
/// orientation-preserving one when both fit); otherwise nullopt.
inline std::optional<Isometry> congruent_triples(const TriplePair& tp) {
    const auto& p = tp.p();
    const auto& q = tp.p_prime();
    if (dist2(p[0], p[1]) != dist2(q[0], q[1]) || dist2(p[0], p[2]) != dist2(q[0], q[2]) ||
        dist2(p[1], p[2]) != dist2(q[1], q[2]))
        return std::nullopt;
    Point2 u = p[1] - p[0], v = q[1] - q[0];
    Rational l2 = u.norm2();  // = |v|^2, nonzero since p_1 != p_2
    Rational inv = Rational(1) / l2;
    // Rotation taking u to v.
    Mat2 rot{inv * (u.x * v.x + u.y * v.y), inv * (u.y * v.x - u.x * v.y),
             inv * (u.x * v.y - u.y * v.x), inv * (u.x * v.x + u.y * v.y)};
    Isometry s1(rot, q[0] - rot.apply(p[0]));
    if (s1.apply(p[2]) == q[2]) return s1;
    // Reflection taking u to v.
    Mat2 ref{inv * (u.x * v.x - u.y * v.y), inv * (u.x * v.y + u.y * v.x),
             inv * (u.x * v.y + u.y * v.x), inv * (u.y * v.y - u.x * v.x)};
    Isometry s2(ref, q[0] - ref.apply(p[0]));
    if (s2.apply(p[2]) == q[2]) return s2;
    return std::nullopt;
}

namespace detail {

inline bool collinear(const std::array<Point2, 3>& t) {
    return (t[1] - t[0]).cross(t[2] - t[0]) == 0;
}

// sigma polynomial of the base triple when the primed triple is
// non-collinear: || p3 ||^2 - 2 p3.q + ||q||^2 - ||p3'||^2 + 2 p3'.T(q)
// - ||T(q)||^2 with T(q) = M q + w.
inline BiPoly sigma_from_map(const Point2& p3, const Point2& p3p, const Mat2& m, const Point2& w) {
    BiPoly x = BiPoly::monomial(1, 0), y = BiPoly::monomial(0, 1);
    BiPoly tx = BiPoly::constant(m.a) * x + BiPoly::constant(m.b) * y + BiPoly::constant(w.x);
    BiPoly ty = BiPoly::constant(m.c) * x + BiPoly::constant(m.d) * y + BiPoly::constant(w.y);
    BiPoly lhs = BiPoly::constant(p3.norm2()) - BiPoly::constant(Rational(2) * p3.x) * x -
                 BiPoly::constant(Rational(2) * p3.y) * y + x * x + y * y;
    BiPoly rhs = BiPoly::constant(p3p.norm2()) - BiPoly::constant(Rational(2) * p3p.x) * tx -
                 BiPoly::constant(Rational(2) * p3p.y) * ty + tx * tx + ty * ty;
    return lhs - rhs;
}

// Signed coordinates of (t1 - origin, t2 - origin) along the line spanned by
// a nonzero rational direction; requires the direction length be rational.
struct LineCoords {
    Rational a, b;
};

inline LineCoords line_coords(const Point2& origin, const Point2& t1, const Point2& t2,
                              const Point2& dir) {
    auto len = sqrt_exact(dir.norm2());
    if (!len) throw IrrationalNormalizerError{};
    Rational inv = Rational(1) / *len;
    return {inv * (t1 - origin).dot(dir), inv * (t2 - origin).dot(dir)};
}

}  // namespace detail

/// Full case analysis of the congruence/conic dichotomy for a pair of point
/// triples. Branches: (a) primed triple non-collinear, (b) only the base
/// triple non-collinear (roles swapped), (c) both collinear (normalized onto
/// a line; ratio analysis distinguishes VerticalLines / Congruent / Empty).
inline SigmaOutcome sigma_dichotomy(const TriplePair& tp) {
    const auto& p = tp.p();
    const auto& q = tp.p_prime();
    bool base_coll = detail::collinear(p);
    bool primed_coll = detail::collinear(q);

    if (!primed_coll || !base_coll) {
        // Work with whichever side is non-collinear as the "B" side.
        bool swapped = primed_coll;  // then the base triple is non-collinear
        const auto& pb = swapped ? q : p;
        const auto& qb = swapped ? p : q;
        SigmaSystem sys;
        {
            Point2 r1 = pb[0] - pb[2], r2 = pb[1] - pb[2];
            Point2 s1 = qb[0] - qb[2], s2 = qb[1] - qb[2];
            sys.A = {r1.x, r1.y, r2.x, r2.y};
            sys.B = {s1.x, s1.y, s2.x, s2.y};
            sys.u = {pb[0].norm2() - pb[2].norm2(), pb[1].norm2() - pb[2].norm2()};
            sys.v = {qb[0].norm2() - qb[2].norm2(), qb[1].norm2() - qb[2].norm2()};
        }
        Mat2 binv = sys.B.inverse();
        Mat2 m = binv * sys.A;
        Point2 w = rat(1, 2) * binv.apply(sys.v - sys.u);
        if (m.is_orthogonal()) {
            auto wit = congruent_triples(tp);
            if (!wit) throw std::logic_error("sigma_dichotomy: isometric map but no witness");
            return SigmaOutcome::congruent(std::move(*wit));
        }
        BiPoly sigma = detail::sigma_from_map(pb[2], qb[2], m, w);
        BiPoly sigma_other;
        if (sys.A.det() != 0) {
            Mat2 ainv = sys.A.inverse();
            Mat2 m2 = ainv * sys.B;
            Point2 w2 = rat(1, 2) * ainv.apply(sys.u - sys.v);
            sigma_other = detail::sigma_from_map(qb[2], pb[2], m2, w2);
        } else {
            // The other triple is collinear: q' ranges over the image line of
            // the rank-deficient affine map. Its equation comes from a left
            // null vector n of M (n = B^T k with A^T k = 0): n.(q' - w) = 0.
            Point2 k = (sys.A.a != 0 || sys.A.c != 0) ? Point2{sys.A.c, -sys.A.a}
                                                      : Point2{sys.A.d, -sys.A.b};
            Mat2 bt = sys.B.transpose();
            Point2 n = bt.apply(k);
            BiPoly line = BiPoly::monomial(1, 0, n.x) + BiPoly::monomial(0, 1, n.y) -
                          BiPoly::constant(n.dot(w));
            if (line.is_zero()) throw std::logic_error("sigma_dichotomy: degenerate image line");
            sigma_other = line;
        }
        return swapped ? SigmaOutcome::conic(std::move(sigma_other), std::move(sigma))
                       : SigmaOutcome::conic(std::move(sigma), std::move(sigma_other));
    }

    // Both triples collinear: reduce to signed coordinates along each line,
    // measured from p_3 (resp. p_3').
    auto base = detail::line_coords(p[2], p[0], p[1], p[0] - p[2]);
    detail::LineCoords primed{Rational(0), Rational(0)};
    if (!(q[0] == q[2] && q[1] == q[2])) {
        Point2 dir = (q[0] == q[2]) ? q[1] - q[2] : q[0] - q[2];
        primed = detail::line_coords(q[2], q[0], q[1], dir);
    }
    const Rational &a = base.a, &b = base.b, &ap = primed.a, &bp = primed.b;
    // a != 0, b != 0, a != b by pairwise distinctness.
    if (ap * b != bp * a) {
        // Distinct ratios: the two linear equations have a unique solution.
        //   x = (a'/a) x' - a'^2/(2a) + a/2
        //   x = (b'/b) x' - b'^2/(2b) + b/2
        Rational c1 = ap / a, d1 = a / 2 - ap * ap / (2 * a);
        Rational c2 = bp / b, d2 = b / 2 - bp * bp / (2 * b);
        Rational xp = (d2 - d1) / (c1 - c2);
        Rational x = c1 * xp + d1;
        return SigmaOutcome::vertical(std::move(x), std::move(xp));
    }
    Rational t = ap / a;
    if (t == 1 || t == -1) {
        auto wit = congruent_triples(tp);
        if (!wit) throw std::logic_error("sigma_dichotomy: collinear t=+-1 but no witness");
        return SigmaOutcome::congruent(std::move(*wit));
    }
    return SigmaOutcome::empty();
}

}  // namespace prox

#endif
