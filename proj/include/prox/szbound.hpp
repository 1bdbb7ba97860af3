#ifndef PROX_SZBOUND_HPP
#define PROX_SZBOUND_HPP

#include <cmath>
#include <stdexcept>

namespace prox {

/// Numeric evaluation of the s-dimensional-family incidence bound with unit
/// leading constants:
///   term_family = m^{2s/(5s-4)} * n^{(5s-6)/(5s-4) + eps}
///   term_st     = m^{2/3} n^{2/3} + m + n
/// Reporting only; never feeds back into exact counting.
struct SzBound {
    double term_family;
    double term_st;
    double total;
};

inline SzBound sz_bound(double m, double n_curves, int s_dim, double eps) {
    if (s_dim < 2) throw std::invalid_argument("sz_bound: s_dim must be >= 2");
    if (eps < 0) throw std::invalid_argument("sz_bound: eps must be nonnegative");
    double denom = 5.0 * s_dim - 4.0;
    SzBound out;
    out.term_family =
        std::pow(m, 2.0 * s_dim / denom) * std::pow(n_curves, (5.0 * s_dim - 6.0) / denom + eps);
    out.term_st = std::pow(m, 2.0 / 3.0) * std::pow(n_curves, 2.0 / 3.0) + m + n_curves;
    out.total = out.term_family + out.term_st;
    return out;
}

}  // namespace prox

#endif
