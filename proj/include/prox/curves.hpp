#ifndef PROX_CURVES_HPP
#define PROX_CURVES_HPP

#include "prox/bipoly.hpp"
#include "prox/quadruples.hpp"
#include "prox/symmetry.hpp"
#include "prox/szbound.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace prox {

/// Parameter tuple (b, c, b', c') of a proximity curve, with the ground-set
/// indices retained for fast tuple lookups. diagonal marks the augmented
/// tuples with (b',c') = (b,c), which sit outside the componentwise-distinct
/// family but are needed to surface the x - x' component in the multiplicity
/// analysis.
struct CurveParams {
    Rational b, c, bp, cp;
    uint32_t ib = 0, ic = 0, ibp = 0, icp = 0;
    bool diagonal = false;
};

struct CurveRecord {
    CurveParams params;
    BiPoly poly;  // canonical primitive form
};

/// Canonical primitive form of (x-b)^2 + (phi(x)-c)^2 - (x'-b')^2 - (phi(x')-c')^2.
inline BiPoly curve_poly(const CurveParams& cp, const UniPoly& phi) {
    auto side = [&](const Rational& b, const Rational& c) {
        UniPoly lin({-b, Rational(1)});
        UniPoly dep = phi - UniPoly({c});
        return lin * lin + dep * dep;
    };
    BiPoly out = BiPoly::from_first(side(cp.b, cp.c)) - BiPoly::from_second(side(cp.bp, cp.cp));
    if (out.is_zero()) throw std::domain_error("curve_poly: degenerate zero polynomial");
    return canonical_form(out);
}

/// All curves of the family: ordered tuples ((b,c),(b',c')) with b ~ b' and
/// c ~ c' (componentwise distinct, same segment). With include_diagonal the
/// tuples (b,c,b,c) for every (b,c) are appended; those carry the curves
/// whose shared component analysis must see the identity symmetry.
inline std::vector<CurveRecord> build_family(const GroundData& g, bool include_diagonal = false) {
    const auto& B = g.B();
    const auto& C = g.C();
    size_t n = g.n();
    const Segmentation& seg = g.segmentation();

    std::vector<BiPoly> side_first(n * n), side_second(n * n);
    for (size_t ib = 0; ib < n; ++ib)
        for (size_t ic = 0; ic < n; ++ic) {
            UniPoly lin({-B[ib], Rational(1)});
            UniPoly dep = g.phi() - UniPoly({C[ic]});
            UniPoly s = lin * lin + dep * dep;
            side_first[ib * n + ic] = BiPoly::from_first(s);
            side_second[ib * n + ic] = BiPoly::from_second(s);
        }

    std::vector<CurveRecord> out;
    auto emit = [&](uint32_t ib, uint32_t ic, uint32_t ibp, uint32_t icp, bool diag) {
        BiPoly p = side_first[ib * n + ic] - side_second[size_t(ibp) * n + icp];
        if (p.is_zero()) throw std::domain_error("build_family: degenerate zero polynomial");
        CurveParams cp{B[ib], C[ic], B[ibp], C[icp], ib, ic, ibp, icp, diag};
        out.push_back({std::move(cp), canonical_form(p)});
    };
    for (size_t sb = 0; sb < g.t(); ++sb)
        for (size_t sc = 0; sc < g.t(); ++sc)
            for (size_t ib = seg.starts[sb]; ib < seg.starts[sb + 1]; ++ib)
                for (size_t ibp = seg.starts[sb]; ibp < seg.starts[sb + 1]; ++ibp) {
                    if (ib == ibp) continue;
                    for (size_t ic = seg.starts[sc]; ic < seg.starts[sc + 1]; ++ic)
                        for (size_t icp = seg.starts[sc]; icp < seg.starts[sc + 1]; ++icp) {
                            if (ic == icp) continue;
                            emit(static_cast<uint32_t>(ib), static_cast<uint32_t>(ic),
                                 static_cast<uint32_t>(ibp), static_cast<uint32_t>(icp), false);
                        }
                }
    if (include_diagonal)
        for (uint32_t ib = 0; ib < n; ++ib)
            for (uint32_t ic = 0; ic < n; ++ic) emit(ib, ic, ib, ic, true);
    return out;
}

/// Nonconstant common divisor of the two canonical polynomials, if any.
inline std::optional<BiPoly> shared_component(const CurveRecord& r1, const CurveRecord& r2) {
    BiPoly gcd = bipoly_gcd(r1.poly, r2.poly);
    if (gcd.is_constant()) return std::nullopt;
    return gcd;
}

namespace detail {

// Mod-p prefilter for shared components. Every factor of a curve polynomial
// has constant leading coefficient in x', so specializing x := 0 and reducing
// modulo a prime not dividing that constant preserves nonconstant common
// divisors. A nonconstant mod-p gcd of the specializations is therefore
// necessary for a shared component; survivors are confirmed exactly.
constexpr uint64_t kFilterPrime = 2305843009213693951ULL;  // 2^61 - 1

inline uint64_t mul_modp(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((unsigned __int128)a * b % p);
}

inline uint64_t sub_modp(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

inline uint64_t pow_modp(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul_modp(r, a, p);
        a = mul_modp(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::optional<uint64_t> rational_modp(const Rational& q, uint64_t p) {
    Integer num = numerator(q), den = denominator(q);
    Integer pi(p);
    Integer nm = num % pi, dm = den % pi;
    if (dm == 0) return std::nullopt;
    uint64_t n = ((nm + pi) % pi).convert_to<uint64_t>();
    uint64_t d = dm.convert_to<uint64_t>();
    return mul_modp(n, pow_modp(d, p - 2, p), p);
}

constexpr int kModPolyCap = 64;  // enough for deg(phi) <= 31

struct ModPoly {
    std::array<uint64_t, kModPolyCap> c{};  // c[j] = coefficient of x'^j
    int deg = -1;
    bool valid = true;  // false if reduction failed; such curves always survive
};

// Specialization at an integer x = x0, reduced mod p. A shared component has
// constant leading coefficient in x', so it survives every specialization; a
// nonconstant gcd of the specialized polynomials at each probed x0 is
// therefore necessary for a shared component.
inline ModPoly specialize_modp(const BiPoly& poly, long long x0, uint64_t p) {
    ModPoly out;
    if (poly.degree_second() >= kModPolyCap || poly.degree_first() >= kModPolyCap) {
        out.valid = false;
        return out;
    }
    uint64_t xp[kModPolyCap];
    xp[0] = 1;
    uint64_t x0m = static_cast<uint64_t>(((x0 % static_cast<long long>(p)) +
                                          static_cast<long long>(p)) %
                                         static_cast<long long>(p));
    for (int i = 1; i <= poly.degree_first(); ++i) xp[i] = mul_modp(xp[i - 1], x0m, p);
    for (const auto& [k, v] : poly.terms()) {
        auto r = rational_modp(v, p);
        if (!r) {
            out.valid = false;
            return out;
        }
        size_t j = static_cast<size_t>(k.second);
        out.c[j] = (out.c[j] + mul_modp(*r, xp[k.first], p)) % p;
    }
    for (int j = 0; j <= poly.degree_second(); ++j)
        if (out.c[static_cast<size_t>(j)] != 0) out.deg = j;
    // Degree in x' must survive reduction, else the filter loses soundness.
    if (out.deg != poly.degree_second()) out.valid = false;
    return out;
}

inline bool modp_gcd_nonconstant(const ModPoly& pa, const ModPoly& pb, uint64_t p) {
    uint64_t abuf[kModPolyCap], bbuf[kModPolyCap];
    std::copy(pa.c.begin(), pa.c.begin() + pa.deg + 1, abuf);
    std::copy(pb.c.begin(), pb.c.begin() + pb.deg + 1, bbuf);
    uint64_t* a = abuf;
    uint64_t* b = bbuf;
    int da = pa.deg, db = pb.deg;
    if (da < 0 || db < 0) return true;  // zero specialization: cannot conclude
    while (db >= 0) {
        if (db == 0) return false;
        // a := a mod b, inversion-free (scale a by lc(b) each step).
        uint64_t lb = b[db];
        while (da >= db) {
            uint64_t la = a[da];
            if (la != 0) {
                for (int i = 0; i <= da; ++i) a[i] = mul_modp(a[i], lb, p);
                for (int i = 0; i <= db; ++i)
                    a[da - db + i] = sub_modp(a[da - db + i], mul_modp(la, b[i], p), p);
            }
            --da;
            while (da >= 0 && a[da] == 0) --da;
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    return da >= 1;  // nonzero remainder chain ended; last nonzero poly is the gcd
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = i;
    }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Classes of curves under the transitive closure of "shares a component",
/// each with a common divisor of all members. Classes with >= 5 members are
/// the exceptional side; their components form the computed exceptional
/// family. Sanity bounds are reported in `violations`, never silently fixed.
struct MultiplicityReport {
    struct ClassInfo {
        BiPoly component;            // divides every member's poly
        std::vector<size_t> members;  // indices into the input family
        bool exceptional = false;     // members.size() >= 5
    };
    std::vector<ClassInfo> classes;
    std::vector<BiPoly> exceptional_components;  // deduplicated, canonical
    size_t max_residual_class = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

inline MultiplicityReport multiplicity_classes(const std::vector<CurveRecord>& family,
                                               const UniPoly& phi) {
    const uint64_t p = detail::kFilterPrime;
    size_t n_curves = family.size();
    // Two probes: one accidental agreement between distinct curves with the
    // same x'-side happens routinely, two forces the x-sides to be equal.
    std::vector<detail::ModPoly> spec0(n_curves), spec1(n_curves);
    for (size_t i = 0; i < n_curves; ++i) {
        spec0[i] = detail::specialize_modp(family[i].poly, 0, p);
        spec1[i] = detail::specialize_modp(family[i].poly, 1, p);
    }

    detail::UnionFind uf(n_curves);
    for (size_t i = 0; i < n_curves; ++i)
        for (size_t j = i + 1; j < n_curves; ++j) {
            if (uf.find(i) == uf.find(j)) continue;
            bool candidate = !spec0[i].valid || !spec0[j].valid ||
                             detail::modp_gcd_nonconstant(spec0[i], spec0[j], p);
            if (candidate && spec1[i].valid && spec1[j].valid)
                candidate = detail::modp_gcd_nonconstant(spec1[i], spec1[j], p);
            if (!candidate) continue;
            if (shared_component(family[i], family[j])) uf.unite(i, j);
        }

    MultiplicityReport rep;
    std::unordered_map<size_t, size_t> root_to_class;
    for (size_t i = 0; i < n_curves; ++i) {
        size_t r = uf.find(i);
        auto [it, inserted] = root_to_class.try_emplace(r, rep.classes.size());
        if (inserted) rep.classes.push_back({family[i].poly, {}, false});
        auto& cls = rep.classes[it->second];
        cls.members.push_back(i);
        cls.component = bipoly_gcd(cls.component, family[i].poly);
    }

    for (auto& cls : rep.classes) {
        cls.exceptional = cls.members.size() >= 5;
        if (cls.component.is_constant())
            rep.violations.push_back("class with " + std::to_string(cls.members.size()) +
                                     " members has constant running gcd");
        else
            for (size_t idx : cls.members)
                if (!bipoly_divides(cls.component, family[idx].poly))
                    rep.violations.push_back("class component does not divide member " +
                                             std::to_string(idx));
        if (cls.exceptional) {
            bool seen = false;
            for (const auto& c : rep.exceptional_components) seen = seen || c == cls.component;
            if (!seen) rep.exceptional_components.push_back(cls.component);
        } else {
            rep.max_residual_class = std::max(rep.max_residual_class, cls.members.size());
        }
    }
    if (rep.max_residual_class > 4)
        rep.violations.push_back("residual class of size " +
                                 std::to_string(rep.max_residual_class) + " exceeds 4");
    if (rep.exceptional_components.size() > 4 * static_cast<size_t>(phi.degree()))
        rep.violations.push_back("exceptional family size " +
                                 std::to_string(rep.exceptional_components.size()) +
                                 " exceeds 4*deg(phi)");
    return rep;
}

/// Linear components forced by the symmetries of the graph y = phi(x),
/// paired with the symmetry. The identity gives x - x'; a half-turn or a
/// vertical reflection with abscissa c0 gives x + x' - 2*c0. The parameter
/// constraint for membership is (b',c') = R(b,c) with the returned R.
struct PredictedComponent {
    BiPoly component;
    Isometry isometry;
};

inline std::vector<PredictedComponent> predict_gamma0(const UniPoly& phi) {
    std::vector<PredictedComponent> out;
    for (const Isometry& r : graph_symmetries(phi)) {
        BiPoly comp;
        if (r.linear == Mat2::identity()) {
            comp = BiPoly::monomial(1, 0) - BiPoly::monomial(0, 1);
        } else {
            // Both remaining symmetry kinds send x to -x + 2*c0.
            Rational c0 = r.translation.x / 2;
            comp = BiPoly::monomial(1, 0) + BiPoly::monomial(0, 1) -
                   BiPoly::constant(Rational(2) * c0);
        }
        out.push_back({canonical_form(comp), r});
    }
    return out;
}

/// Ordered proximity pairs from A: (a, a') with a != a' in the same segment.
struct PointSetP {
    std::vector<std::pair<Rational, Rational>> pairs;
};

inline PointSetP point_set_P(const GroundData& g) {
    PointSetP out;
    const auto& A = g.A();
    const Segmentation& seg = g.segmentation();
    for (size_t si = 0; si < g.t(); ++si)
        for (size_t i = seg.starts[si]; i < seg.starts[si + 1]; ++i)
            for (size_t j = seg.starts[si]; j < seg.starts[si + 1]; ++j)
                if (i != j) out.pairs.emplace_back(A[i], A[j]);
    return out;
}

/// Exact incidence count between P and the curves, brute force.
struct IncidenceReport {
    long long total = 0;
    std::vector<long long> per_curve;
};

inline IncidenceReport incidences(const PointSetP& pts, const std::vector<CurveRecord>& curves) {
    IncidenceReport rep;
    rep.per_curve.assign(curves.size(), 0);
    for (size_t ci = 0; ci < curves.size(); ++ci)
        for (const auto& [a, ap] : pts.pairs)
            if (curves[ci].poly.eval(a, ap) == 0) {
                ++rep.per_curve[ci];
                rep.total = detail::checked_add(rep.total, 1);
            }
    return rep;
}

/// One-instance verification of the upper-bound accounting: the strict
/// quadruple count splits into an exceptional part (parameter tuple's curve
/// contains an exceptional component) bounded by 4*deg(phi)*n^3, and a
/// residual part bounded by 4 * I(P, residual curves). The incidence-theorem
/// value is evaluated numerically for comparison only.
struct UpperAccounting {
    long long strict_total = 0;
    long long q_exceptional = 0;
    long long q_residual = 0;

    Integer bound_exceptional;  // 4*deg(phi)*n^3
    bool exceptional_holds = false;

    long long incidence_total = 0;
    bool residual_holds = false;  // q_residual <= 4 * incidence_total

    size_t p_size = 0;
    size_t family_size = 0;    // componentwise-distinct tuples
    size_t gamma0_size = 0;    // exceptional components
    size_t gamma0_tuples = 0;  // members of the family on the exceptional side
    size_t residual_size = 0;  // curves left after dividing components out

    MultiplicityReport multiplicity;
    SzBound sz{0, 0, 0};
};

inline UpperAccounting verify_upper_accounting(const GroundData& g, double eps = 0.0) {
    UpperAccounting rep;
    // The diagonal tuples sit at the tail, so the augmented family contains
    // the componentwise-distinct one as a prefix.
    std::vector<CurveRecord> augmented = build_family(g, true);
    std::span<const CurveRecord> proper(augmented.data(), augmented.size() - g.n() * g.n());
    rep.family_size = proper.size();
    rep.multiplicity = multiplicity_classes(augmented, g.phi());
    const auto& gamma0 = rep.multiplicity.exceptional_components;
    rep.gamma0_size = gamma0.size();

    // Tuples whose curve contains an exceptional component, keyed by indices.
    auto key_of = [&](uint32_t ib, uint32_t ic, uint32_t ibp, uint32_t icp) {
        return (uint64_t(ib) << 48) | (uint64_t(ic) << 32) | (uint64_t(ibp) << 16) | icp;
    };
    std::unordered_set<uint64_t> gamma0_keys;
    std::vector<CurveRecord> residual;
    for (const CurveRecord& rec : proper) {
        BiPoly quot = rec.poly;
        bool hit = false;
        for (const BiPoly& comp : gamma0)
            while (!quot.is_constant() && bipoly_divides(comp, quot)) {
                quot = bipoly_divide_exact(quot, comp);
                hit = true;
            }
        if (hit) gamma0_keys.insert(key_of(rec.params.ib, rec.params.ic, rec.params.ibp,
                                           rec.params.icp));
        if (!quot.is_constant()) residual.push_back({rec.params, canonical_form(quot)});
    }
    rep.gamma0_tuples = gamma0_keys.size();
    rep.residual_size = residual.size();

    // Strict quadruples grouped by (value, box), split by tuple membership.
    LevelSets ls = level_sets(g);
    for (uint32_t vid = 0; vid < ls.values.size(); ++vid) {
        auto grp = ls.group(vid);
        size_t lo = 0;
        while (lo < grp.size()) {
            size_t hi = lo;
            while (hi < grp.size() && grp[hi].box == grp[lo].box) ++hi;
            for (size_t i = lo; i < hi; ++i)
                for (size_t j = lo; j < hi; ++j) {
                    const auto& e1 = grp[i];
                    const auto& e2 = grp[j];
                    if (e1.a == e2.a || e1.b == e2.b || e1.c == e2.c) continue;
                    rep.strict_total = detail::checked_add(rep.strict_total, 1);
                    if (gamma0_keys.contains(key_of(e1.b, e1.c, e2.b, e2.c)))
                        rep.q_exceptional = detail::checked_add(rep.q_exceptional, 1);
                    else
                        rep.q_residual = detail::checked_add(rep.q_residual, 1);
                }
            lo = hi;
        }
    }

    PointSetP pts = point_set_P(g);
    rep.p_size = pts.pairs.size();
    rep.incidence_total = incidences(pts, residual).total;

    Integer n3 = Integer(g.n()) * Integer(g.n()) * Integer(g.n());
    rep.bound_exceptional = Integer(4) * Integer(g.phi().degree()) * n3;
    rep.exceptional_holds = Integer(rep.q_exceptional) <= rep.bound_exceptional;
    rep.residual_holds = rep.q_residual <= 4 * rep.incidence_total;
    rep.sz = sz_bound(static_cast<double>(rep.p_size), static_cast<double>(rep.residual_size), 4,
                      eps);
    return rep;
}

}  // namespace prox

#endif
