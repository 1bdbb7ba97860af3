#ifndef PROX_GEOM_HPP
#define PROX_GEOM_HPP

#include "prox/rational.hpp"

#include <stdexcept>

namespace prox {

struct Point2 {
    Rational x{0};
    Rational y{0};

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
    friend Point2 operator*(const Rational& s, const Point2& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Point2& a, const Point2& b) = default;

    Rational dot(const Point2& o) const { return x * o.x + y * o.y; }
    Rational cross(const Point2& o) const { return x * o.y - y * o.x; }
    Rational norm2() const { return x * x + y * y; }
};

inline Rational dist2(const Point2& a, const Point2& b) { return (a - b).norm2(); }

/// 2x2 matrix with rows (a b; c d).
struct Mat2 {
    Rational a{0}, b{0}, c{0}, d{0};

    static Mat2 identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }

    Point2 apply(const Point2& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    friend bool operator==(const Mat2& m, const Mat2& n) = default;

    Mat2 transpose() const { return {a, c, b, d}; }

    Rational det() const { return a * d - b * c; }

    Mat2 inverse() const {
        Rational dt = det();
        if (dt == 0) throw std::domain_error("Mat2::inverse: singular");
        Rational s = Rational(1) / dt;
        return {s * d, -s * b, -s * c, s * a};
    }

    bool is_orthogonal() const { return transpose() * *this == identity(); }
};

/// Exact plane isometry q -> M q + t with M orthogonal.
struct Isometry {
    Mat2 linear = Mat2::identity();
    Point2 translation;

    Isometry() = default;

    Isometry(Mat2 m, Point2 t) : linear(m), translation(std::move(t)) {
        if (!linear.is_orthogonal()) throw std::domain_error("Isometry: linear part not orthogonal");
    }

    static Isometry identity() { return {}; }

    static Isometry translate(Point2 t) { return {Mat2::identity(), std::move(t)}; }

    Point2 apply(const Point2& q) const { return linear.apply(q) + translation; }

    /// this after other: (this o other)(q) = this(other(q)).
    Isometry compose(const Isometry& other) const {
        return {linear * other.linear, linear.apply(other.translation) + translation};
    }

    Isometry inverse() const {
        Mat2 mi = linear.transpose();  // orthogonal
        return {mi, -mi.apply(translation)};
    }

    bool is_identity() const { return linear == Mat2::identity() && translation == Point2{}; }

    friend bool operator==(const Isometry& a, const Isometry& b) = default;
};

inline Point2 apply_isometry(const Isometry& r, const Point2& q) { return r.apply(q); }

}  // namespace prox

#endif
