#ifndef PROX_SYMMETRY_HPP
#define PROX_SYMMETRY_HPP

#include "prox/geom.hpp"
#include "prox/unipoly.hpp"

#include <stdexcept>
#include <vector>

namespace prox {

/// All plane isometries fixing the graph {(t, phi(t))}, for deg(phi) >= 3.
///
/// An unbounded polynomial graph of degree >= 2 rules out every isometry
/// outside three candidate families:
///  - translations and glide reflections would force the graph onto a line;
///  - a rotation by an angle other than 0 or pi, or a reflection in a
///    non-vertical axis, maps some vertical line to a non-vertical line, so
///    the image fails the vertical line test that a function graph must pass
///    (a horizontal reflection axis forces phi constant).
/// That leaves: the identity; reflection in a vertical line x = c, which
/// fixes the graph iff phi(2c - x) == phi(x); and the half-turn about a
/// point (c, d), which fixes it iff phi(2c - x) + phi(x) == 2d. Each
/// candidate equation pins c by comparing the two top coefficients and is
/// then verified by exact coefficient comparison, so the enumeration is
/// complete. The degree parity decides which family can occur, hence at
/// most 2 symmetries in practice, well under the 4*deg(phi) bound.
inline std::vector<Isometry> graph_symmetries(const UniPoly& phi) {
    int d = phi.degree();
    if (d < 3) throw std::invalid_argument("graph_symmetries: degree must be >= 3");
    std::vector<Isometry> out;
    out.push_back(Isometry::identity());

    Rational lead = phi.leading();
    Rational sub = phi.coeff(d - 1);
    // Both families need phi(2c - x) to have leading term matching up to
    // sign, and both pin c = -phi_{d-1} / (d * phi_d).
    Rational c = -sub / (Rational(d) * lead);

    if (d % 2 == 0) {
        // Vertical reflection x = c: phi(2c - x) == phi(x).
        UniPoly reflected = poly_compose_affine(phi, Rational(-1), Rational(2) * c);
        if (reflected == phi) {
            Mat2 m{Rational(-1), Rational(0), Rational(0), Rational(1)};
            out.emplace_back(m, Point2{Rational(2) * c, Rational(0)});
        }
    } else {
        // Half-turn about (c, d0): phi(2c - x) + phi(x) == 2 d0.
        UniPoly sum = poly_compose_affine(phi, Rational(-1), Rational(2) * c) + phi;
        if (sum.is_constant()) {
            Rational d0 = sum.coeff(0) / 2;
            Mat2 m{Rational(-1), Rational(0), Rational(0), Rational(-1)};
            out.emplace_back(m, Point2{Rational(2) * c, Rational(2) * d0});
        }
    }
    return out;
}

}  // namespace prox

#endif
