#ifndef PROX_QUADRUPLES_HPP
#define PROX_QUADRUPLES_HPP

#include "prox/levels.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace prox {

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("quadruple count overflow");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("quadruple count overflow");
    return r;
}

}  // namespace detail

/// Quadruple counts over ordered pairs of triples with equal f-value lying
/// in the same box. relaxed_ordered only requires the two triples distinct;
/// strict_ordered additionally requires componentwise distinctness
/// (a != a', b != b', c != c'), which is what the proximity relation asks.
struct QuadrupleStats {
    long long strict_ordered = 0;
    long long relaxed_ordered = 0;

    struct BoxCount {
        uint32_t vid, box;
        long long count;  // |G_d ∩ box|
    };
    std::vector<BoxCount> table;  // per-d per-box contribution table
};

/// Grouped counting: one pass over level-set groups split by box; never
/// enumerates pairs. Strict counts subtract coordinate collisions by
/// inclusion-exclusion over projection multiplicity tables.
inline QuadrupleStats count_Q(const GroundData& g, const LevelSets& ls) {
    QuadrupleStats qs;
    std::unordered_map<uint32_t, long long> cnt_a, cnt_b, cnt_c;
    std::unordered_map<uint64_t, long long> cnt_ab, cnt_ac, cnt_bc;
    for (uint32_t vid = 0; vid < ls.values.size(); ++vid) {
        auto grp = ls.group(vid);
        size_t lo = 0;
        while (lo < grp.size()) {
            size_t hi = lo;
            while (hi < grp.size() && grp[hi].box == grp[lo].box) ++hi;
            long long m = static_cast<long long>(hi - lo);
            qs.table.push_back({vid, grp[lo].box, m});
            if (m > 1) {
                qs.relaxed_ordered =
                    detail::checked_add(qs.relaxed_ordered, detail::checked_mul(m, m - 1));
                cnt_a.clear();
                cnt_b.clear();
                cnt_c.clear();
                cnt_ab.clear();
                cnt_ac.clear();
                cnt_bc.clear();
                for (size_t i = lo; i < hi; ++i) {
                    const auto& e = grp[i];
                    ++cnt_a[e.a];
                    ++cnt_b[e.b];
                    ++cnt_c[e.c];
                    ++cnt_ab[(uint64_t(e.a) << 32) | e.b];
                    ++cnt_ac[(uint64_t(e.a) << 32) | e.c];
                    ++cnt_bc[(uint64_t(e.b) << 32) | e.c];
                }
                auto sumsq = [](const auto& map) {
                    long long s = 0;
                    for (const auto& [k, v] : map)
                        s = detail::checked_add(s, detail::checked_mul(v, v));
                    return s;
                };
                long long strict = detail::checked_mul(m, m);
                strict -= sumsq(cnt_a) + sumsq(cnt_b) + sumsq(cnt_c);
                strict += sumsq(cnt_ab) + sumsq(cnt_ac) + sumsq(cnt_bc);
                strict -= m;  // pairs agreeing on all three coordinates
                qs.strict_ordered = detail::checked_add(qs.strict_ordered, strict);
            }
            lo = hi;
        }
    }
    (void)g;
    return qs;
}

/// Literal verification of the lower-bound counting chain on one instance.
/// Step (a) is forced by the definition of D'; steps (b) and (c) hold
/// asymptotically and are reported with exact slack, not asserted.
struct LowerChainReport {
    size_t n = 0, t = 0, d_size = 0;
    long long s = 0;

    Integer heavy_sum;     // sum over D' of |G_d|
    Rational heavy_bound;  // (9/10) n^3
    Rational heavy_slack;  // heavy_sum - bound (>= 0 always)
    size_t heavy_count = 0;

    struct PerHeavy {
        uint32_t vid;
        Integer gd_size;
        Integer tdprime_sum;  // mass in boxes holding >= s triples of G_d
        bool holds;           // tdprime_sum >= gd_size / 2
        Rational slack;
    };
    std::vector<PerHeavy> per_heavy;
    size_t step_b_holds = 0, step_b_fails = 0;

    long long relaxed_ordered = 0;
    Rational step_c_bound;  // (9/50) s n^3
    bool step_c_holds = false;
    Rational step_c_slack;  // relaxed/2 - bound
};

inline LowerChainReport verify_lower_chain(const GroundData& g, const LevelSets& ls,
                                           const QuadrupleStats& qs) {
    LowerChainReport rep;
    rep.n = g.n();
    rep.t = g.t();
    rep.s = g.s();
    rep.d_size = ls.values.size();

    HeavyValues hv = heavy_values(ls, g.n());
    rep.heavy_sum = hv.total;
    rep.heavy_bound = hv.bound;
    rep.heavy_slack = Rational(hv.total) - hv.bound;
    rep.heavy_count = hv.vids.size();

    // Per-box masses, reusing the contribution table (sorted by vid).
    size_t ti = 0;
    for (uint32_t vid : hv.vids) {
        while (ti < qs.table.size() && qs.table[ti].vid < vid) ++ti;
        Integer in_heavy_boxes(0);
        size_t tj = ti;
        while (tj < qs.table.size() && qs.table[tj].vid == vid) {
            if (qs.table[tj].count >= g.s()) in_heavy_boxes += qs.table[tj].count;
            ++tj;
        }
        LowerChainReport::PerHeavy ph;
        ph.vid = vid;
        ph.gd_size = Integer(ls.group_size(vid));
        ph.tdprime_sum = in_heavy_boxes;
        ph.slack = Rational(in_heavy_boxes) - Rational(ph.gd_size, 2);
        ph.holds = ph.slack >= 0;
        (ph.holds ? rep.step_b_holds : rep.step_b_fails) += 1;
        rep.per_heavy.push_back(std::move(ph));
    }

    rep.relaxed_ordered = qs.relaxed_ordered;
    Integer n3 = Integer(g.n()) * Integer(g.n()) * Integer(g.n());
    rep.step_c_bound = Rational(Integer(9) * Integer(g.s()) * n3, 50);
    rep.step_c_slack = Rational(rep.relaxed_ordered, 2) - rep.step_c_bound;
    rep.step_c_holds = rep.step_c_slack >= 0;
    return rep;
}

}  // namespace prox

#endif
