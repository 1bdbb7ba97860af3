#ifndef PROX_LEVELS_HPP
#define PROX_LEVELS_HPP

#include "prox/ground.hpp"
#include "prox/interval.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace prox {

/// f(x,y,z) = (x-y)^2 + (phi(x)-z)^2, exactly.
inline Rational eval_f(const Rational& a, const Rational& b, const Rational& c,
                       const UniPoly& phi) {
    Rational d1 = a - b;
    Rational d2 = phi.eval(a) - c;
    return d1 * d1 + d2 * d2;
}

/// The image set D = f(A,B,C) as a hash set of exact values.
inline std::unordered_set<Rational, RationalHash> image_set(const GroundData& g) {
    const auto& A = g.A();
    const auto& B = g.B();
    const auto& C = g.C();
    size_t n = g.n();
    std::vector<Rational> phi_a(n);
    for (size_t i = 0; i < n; ++i) phi_a[i] = g.phi().eval(A[i]);
    std::unordered_set<Rational, RationalHash> out;
    out.reserve(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            Rational d1 = A[a] - B[b];
            d1 *= d1;
            for (size_t c = 0; c < n; ++c) {
                Rational v = phi_a[a] - C[c];
                v *= v;
                v += d1;
                out.insert(std::move(v));
            }
        }
    return out;
}

/// All n^3 grid triples grouped by exact f-value, with per-box sub-ranges.
/// Value ids are assigned in enumeration order (a outer, then b, then c), so
/// the structure is deterministic for fixed input data.
class LevelSets {
public:
    struct Entry {
        uint32_t box;  // (i*t + j)*t + k over segment indices
        uint32_t a, b, c;
    };

    std::vector<Rational> values;                               // by value id
    std::unordered_map<Rational, uint32_t, RationalHash> index;  // value -> id
    std::vector<size_t> offsets;                                // CSR, size values.size()+1
    std::vector<Entry> entries;  // grouped by value id, sorted by box inside a group

    size_t group_size(uint32_t vid) const { return offsets[vid + 1] - offsets[vid]; }

    std::span<const Entry> group(uint32_t vid) const {
        return {entries.data() + offsets[vid], group_size(vid)};
    }

    uint32_t require_value(const Rational& d) const {
        auto it = index.find(d);
        if (it == index.end()) throw std::invalid_argument("LevelSets: value not attained");
        return it->second;
    }
};

inline LevelSets level_sets(const GroundData& g) {
    const auto& A = g.A();
    const auto& B = g.B();
    const auto& C = g.C();
    size_t n = g.n();
    uint32_t t = static_cast<uint32_t>(g.t());
    const Segmentation& seg = g.segmentation();
    std::vector<uint32_t> segidx(n);
    for (size_t i = 0; i < n; ++i) segidx[i] = static_cast<uint32_t>(seg.segment_of(i));
    std::vector<Rational> phi_a(n);
    for (size_t i = 0; i < n; ++i) phi_a[i] = g.phi().eval(A[i]);

    LevelSets ls;
    struct Rec {
        uint32_t vid, box, a, b, c;
    };
    std::vector<Rec> recs;
    recs.reserve(n * n * n);
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) {
            Rational d1 = A[a] - B[b];
            d1 *= d1;
            uint32_t boxab = (segidx[a] * t + segidx[b]) * t;
            for (uint32_t c = 0; c < n; ++c) {
                Rational v = phi_a[a] - C[c];
                v *= v;
                v += d1;
                auto [it, inserted] =
                    ls.index.try_emplace(std::move(v), static_cast<uint32_t>(ls.values.size()));
                if (inserted) ls.values.push_back(it->first);
                recs.push_back({it->second, boxab + segidx[c], a, b, c});
            }
        }
    std::sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
        if (x.vid != y.vid) return x.vid < y.vid;
        if (x.box != y.box) return x.box < y.box;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });
    ls.offsets.assign(ls.values.size() + 1, 0);
    for (const Rec& r : recs) ++ls.offsets[r.vid + 1];
    for (size_t i = 1; i < ls.offsets.size(); ++i) ls.offsets[i] += ls.offsets[i - 1];
    ls.entries.reserve(recs.size());
    for (const Rec& r : recs) ls.entries.push_back({r.box, r.a, r.b, r.c});
    return ls;
}

/// Heavy values D' = {d : |G_d| >= n^3 / (10 |D|)}, with the partition-forced
/// lower bound sum_{D'} |G_d| >= (9/10) n^3 checked exactly.
struct HeavyValues {
    std::vector<uint32_t> vids;
    Integer total;       // sum of |G_d| over D'
    Rational threshold;  // n^3 / (10 |D|)
    Rational bound;      // (9/10) n^3
};

inline HeavyValues heavy_values(const LevelSets& ls, size_t n) {
    HeavyValues hv;
    Integer n3 = Integer(n) * Integer(n) * Integer(n);
    hv.threshold = Rational(n3, Integer(10) * Integer(ls.values.size()));
    hv.bound = Rational(Integer(9) * n3, Integer(10));
    hv.total = 0;
    for (uint32_t vid = 0; vid < ls.values.size(); ++vid) {
        Integer sz(ls.group_size(vid));
        if (Rational(sz) >= hv.threshold) {
            hv.vids.push_back(vid);
            hv.total += sz;
        }
    }
    if (Rational(hv.total) < hv.bound)
        throw std::logic_error("heavy_values: (9/10) n^3 bound violated; counting bug");
    return hv;
}

/// Boxes containing at least one triple of G_d, with their counts.
inline std::map<uint32_t, size_t> occupied_boxes(const LevelSets& ls, const Rational& d) {
    uint32_t vid = ls.require_value(d);
    std::map<uint32_t, size_t> out;
    for (const auto& e : ls.group(vid)) ++out[e.box];
    return out;
}

/// Superset of the boxes meeting the surface f = d, from interval-arithmetic
/// range enclosure over each box; sound, so it contains every occupied box.
inline std::vector<uint32_t> surface_boxes(const GroundData& g, const Rational& d) {
    size_t t = g.t();
    const Segmentation& seg = g.segmentation();
    auto span_of = [&](const std::vector<Rational>& set, size_t si) {
        return RatInterval(set[seg.starts[si]], set[seg.starts[si + 1] - 1]);
    };
    std::vector<RatInterval> ai, bi, ci, phi_ai;
    for (size_t i = 0; i < t; ++i) {
        ai.push_back(span_of(g.A(), i));
        bi.push_back(span_of(g.B(), i));
        ci.push_back(span_of(g.C(), i));
        phi_ai.push_back(interval_eval(g.phi(), ai.back()));
    }
    std::vector<uint32_t> out;
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j) {
            RatInterval d1 = (ai[i] - bi[j]).square();
            for (size_t k = 0; k < t; ++k) {
                RatInterval range = d1 + (phi_ai[i] - ci[k]).square();
                if (range.contains(d))
                    out.push_back(static_cast<uint32_t>((i * t + j) * t + k));
            }
        }
    return out;
}

}  // namespace prox

#endif
