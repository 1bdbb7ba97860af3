#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prox/levels.hpp"
#include "prox/quadruples.hpp"
#include "prox/szbound.hpp"
#include "prox_test_util.hpp"

#include <algorithm>

using namespace prox;
using namespace prox_test;

namespace {

UniPoly cube() { return UniPoly({rat(0), rat(0), rat(0), rat(1)}); }

std::vector<Rational> range_set(long long lo, long long hi) {
    std::vector<Rational> v;
    for (long long i = lo; i <= hi; ++i) v.push_back(Rational(i));
    return v;
}

GroundData make_ground(std::vector<Rational> vals, UniPoly phi, long long s, size_t t) {
    return GroundData(vals, vals, vals, std::move(phi), s, t);
}

}  // namespace

TEST_CASE("eval_f") {
    CHECK(eval_f(rat(2), rat(1), rat(3), cube()) == rat(26));
    SplitMix64 rng(3);
    for (int it = 0; it < 20; ++it) {
        UniPoly phi({random_rat(rng), random_rat(rng), random_rat(rng), rat(1)});
        Rational a = random_rat(rng);
        CHECK(eval_f(a, a, phi.eval(a), phi) == rat(0));
    }
    CHECK(eval_f(rat(1), rat(0), rat(0), cube()) == rat(2));
}

TEST_CASE("image_set") {
    auto d = image_set(make_ground({rat(0), rat(1)}, cube(), 1, 1));
    CHECK(d.size() == 3);
    CHECK(d.contains(rat(0)));
    CHECK(d.contains(rat(1)));
    CHECK(d.contains(rat(2)));

    CHECK(image_set(make_ground({rat(0)}, cube(), 1, 1)).size() == 1);

    for (size_t n : {4, 16, 64}) {
        auto dn = image_set(make_ground(range_set(1, static_cast<long long>(n)), cube(), 1, 1));
        CHECK(dn.size() >= n);
    }
}

TEST_CASE("choose_t") {
    CHECK(choose_t(100, 400, 10) == 5);
    CHECK(choose_t(4, 64, 100) == 1);
    CHECK(choose_t(9, 9, 1) == 9);
    // Half-up rounding: n=2, |D|=2, s=1 gives sqrt(8/2)=2 exactly.
    CHECK(choose_t(2, 2, 1) == 2);
    CHECK_THROWS_AS(choose_t(0, 1, 1), std::invalid_argument);
}

TEST_CASE("partition_consecutive") {
    auto p = partition_consecutive(10, 3);
    CHECK(p.starts == std::vector<size_t>{0, 4, 7, 10});
    CHECK(p.segment_size(0) == 4);
    CHECK(p.segment_of(3) == 0);
    CHECK(p.segment_of(4) == 1);

    auto singles = partition_consecutive(6, 6);
    for (size_t i = 0; i < 6; ++i) CHECK(singles.segment_size(i) == 1);

    auto p2 = partition_consecutive(7, 2);
    CHECK(p2.segment_size(0) == 4);
    CHECK(p2.segment_size(1) == 3);

    CHECK_THROWS_AS(partition_consecutive(3, 4), std::invalid_argument);
}

TEST_CASE("related") {
    auto set = range_set(1, 10);
    auto seg = partition_consecutive(10, 3);
    CHECK(!related(set, seg, rat(2), rat(2)));
    CHECK(related(set, seg, rat(1), rat(2)));
    // Last element of segment 1 (index 3) and first of segment 2 (index 4).
    CHECK(!related(set, seg, rat(4), rat(5)));
    CHECK_THROWS_AS(related(set, seg, rat(1), rat(99)), std::invalid_argument);
}

TEST_CASE("level_sets fixtures") {
    auto g = make_ground({rat(0), rat(1)}, cube(), 1, 1);
    auto ls = level_sets(g);
    REQUIRE(ls.values.size() == 3);
    CHECK(ls.group_size(ls.require_value(rat(0))) == 2);
    CHECK(ls.group_size(ls.require_value(rat(1))) == 4);
    CHECK(ls.group_size(ls.require_value(rat(2))) == 2);
    CHECK_THROWS_AS(ls.require_value(rat(7)), std::invalid_argument);

    auto g1 = make_ground({rat(0)}, cube(), 1, 1);
    CHECK(level_sets(g1).values.size() == 1);
    CHECK(level_sets(g1).group_size(0) == 1);
}

TEST_CASE("partition identity over random instances") {
    SplitMix64 rng(0xAA);
    for (int it = 0; it < 10; ++it) {
        size_t n = 2 + rng.below(14);
        std::vector<Rational> vals;
        while (vals.size() < n) {
            Rational v = random_rat(rng, 60, 4);
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        size_t t = 1 + rng.below(n);
        auto g = make_ground(vals, cube(), 3, t);
        auto ls = level_sets(g);
        size_t total = 0;
        for (uint32_t vid = 0; vid < ls.values.size(); ++vid) total += ls.group_size(vid);
        CHECK(total == n * n * n);
        CHECK(ls.entries.size() == n * n * n);
    }
}

TEST_CASE("heavy_values") {
    auto g = make_ground({rat(0), rat(1)}, cube(), 1, 1);
    auto ls = level_sets(g);
    auto hv = heavy_values(ls, g.n());
    // Threshold 8/30 < 1, so D' = D.
    CHECK(hv.threshold == rat(8, 30));
    CHECK(hv.vids.size() == 3);
    CHECK(hv.total == 8);

    auto g1 = make_ground({rat(0)}, cube(), 1, 1);
    auto ls1 = level_sets(g1);
    CHECK(heavy_values(ls1, 1).vids.size() == 1);
}

TEST_CASE("occupied and surface boxes") {
    // t=1: the single box for every attained value.
    auto g1 = make_ground({rat(0), rat(1)}, cube(), 1, 1);
    auto ls1 = level_sets(g1);
    for (const auto& v : ls1.values) {
        auto occ = occupied_boxes(ls1, v);
        CHECK(occ.size() == 1);
        CHECK(occ.begin()->first == 0);
        auto surf = surface_boxes(g1, v);
        CHECK(surf == std::vector<uint32_t>{0});
    }

    // n=2, t=2: G_0 = {(0,0,0),(1,1,1)} occupies the two diagonal boxes.
    auto g2 = make_ground({rat(0), rat(1)}, cube(), 1, 2);
    auto ls2 = level_sets(g2);
    auto occ0 = occupied_boxes(ls2, rat(0));
    REQUIRE(occ0.size() == 2);
    CHECK(occ0.count(0) == 1);  // (0,0,0)
    CHECK(occ0.count(7) == 1);  // (1,1,1)

    // Enclosure soundness on random instances.
    SplitMix64 rng(0x0B);
    for (int it = 0; it < 8; ++it) {
        size_t n = 4 + rng.below(8);
        std::vector<Rational> vals;
        while (vals.size() < n) {
            Rational v(rng.range(-30, 30));
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        size_t t = 1 + rng.below(n);
        auto g = make_ground(vals, cube(), 3, t);
        auto ls = level_sets(g);
        for (const auto& v : ls.values) {
            auto occ = occupied_boxes(ls, v);
            auto surf = surface_boxes(g, v);
            for (const auto& [box, cnt] : occ)
                CHECK(std::find(surf.begin(), surf.end(), box) != surf.end());
        }
    }
}

TEST_CASE("surface box density stays quadratic in t") {
    // Empirical witness for the O(t^2) surface-box claim, not a proof.
    auto g = make_ground(range_set(1, 32), cube(), 1, 4);
    auto ls = level_sets(g);
    size_t max_boxes = 0;
    for (const auto& v : ls.values) max_boxes = std::max(max_boxes, surface_boxes(g, v).size());
    CHECK(max_boxes <= 16 * 4 * 4);
}

TEST_CASE("count_Q worked instance") {
    auto g = make_ground({rat(0), rat(1)}, cube(), 1, 1);
    auto qs = count_Q(g, level_sets(g));
    CHECK(qs.strict_ordered == 8);
    CHECK(qs.relaxed_ordered == 16);

    // t = n: every segment is a singleton, so both counts vanish.
    auto gn = make_ground(range_set(1, 6), cube(), 1, 6);
    auto qn = count_Q(gn, level_sets(gn));
    CHECK(qn.strict_ordered == 0);
    CHECK(qn.relaxed_ordered == 0);
}

TEST_CASE("count_Q equals brute-force oracle for n <= 8") {
    SplitMix64 rng(0x51);
    for (int it = 0; it < 12; ++it) {
        size_t n = 2 + rng.below(7);
        std::vector<Rational> vals;
        while (vals.size() < n) {
            Rational v(rng.range(-6, 6));
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        size_t t = 1 + rng.below(n);
        UniPoly phi = (it % 2) ? cube() : UniPoly({rat(0), rat(1), rat(1), rat(1)});
        auto g = make_ground(vals, phi, 2, t);
        auto qs = count_Q(g, level_sets(g));
        auto [bs, br] = brute_Q(g);
        CHECK(qs.strict_ordered == bs);
        CHECK(qs.relaxed_ordered == br);
        // Pair-swap involution: both counts even; relaxed dominates strict.
        CHECK(qs.strict_ordered % 2 == 0);
        CHECK(qs.relaxed_ordered % 2 == 0);
        CHECK(qs.relaxed_ordered >= qs.strict_ordered);
    }
}

TEST_CASE("coarsening a nested partition never decreases Q") {
    auto vals = range_set(1, 16);
    long long prev_strict = -1, prev_relaxed = -1;
    for (size_t t : {16, 8, 4, 2, 1}) {  // each partition coarsens the previous
        auto g = make_ground(vals, cube(), 1, t);
        auto qs = count_Q(g, level_sets(g));
        CHECK(qs.strict_ordered >= prev_strict);
        CHECK(qs.relaxed_ordered >= prev_relaxed);
        prev_strict = qs.strict_ordered;
        prev_relaxed = qs.relaxed_ordered;
    }
}

TEST_CASE("verify_lower_chain") {
    auto g = make_ground(range_set(1, 16), cube(), 4, 2);
    auto ls = level_sets(g);
    auto qs = count_Q(g, ls);
    auto rep = verify_lower_chain(g, ls, qs);

    // Step (a) is instance-independent arithmetic.
    CHECK(rep.heavy_slack >= 0);
    CHECK(Rational(rep.heavy_sum) >= rep.heavy_bound);

    // Consistency: recompute the reported quantities independently.
    Integer heavy_sum(0);
    size_t heavy_count = 0;
    Rational threshold(Integer(16 * 16 * 16), Integer(10) * Integer(ls.values.size()));
    for (uint32_t vid = 0; vid < ls.values.size(); ++vid) {
        if (Rational(Integer(ls.group_size(vid))) >= threshold) {
            heavy_sum += Integer(ls.group_size(vid));
            ++heavy_count;
        }
    }
    CHECK(rep.heavy_sum == heavy_sum);
    CHECK(rep.heavy_count == heavy_count);
    CHECK(rep.per_heavy.size() == heavy_count);
    CHECK(rep.step_b_holds + rep.step_b_fails == heavy_count);
    for (const auto& ph : rep.per_heavy) {
        CHECK(ph.gd_size == Integer(ls.group_size(ph.vid)));
        CHECK(ph.holds == (Rational(ph.tdprime_sum) >= Rational(ph.gd_size, 2)));
    }
    CHECK(rep.relaxed_ordered == qs.relaxed_ordered);
    CHECK(rep.step_c_bound == Rational(Integer(9) * 4 * 16 * 16 * 16, 50));

    // t=1: T_d' is the single box when it holds >= s triples.
    auto g1 = make_ground(range_set(1, 8), cube(), 2, 1);
    auto ls1 = level_sets(g1);
    auto rep1 = verify_lower_chain(g1, ls1, count_Q(g1, ls1));
    for (const auto& ph : rep1.per_heavy) {
        bool expect = ph.gd_size >= 2;
        CHECK(ph.tdprime_sum == (expect ? ph.gd_size : Integer(0)));
    }
}

TEST_CASE("sz_bound") {
    auto b = sz_bound(1e4, 1e4, 4, 0.0);
    CHECK(b.term_family == doctest::Approx(std::pow(10.0, 5.5)).epsilon(1e-12));
    CHECK(b.term_st == doctest::Approx(std::pow(10.0, 16.0 / 3.0) + 2e4).epsilon(1e-12));

    auto b2 = sz_bound(100.0, 1000.0, 2, 0.25);
    CHECK(b2.term_family ==
          doctest::Approx(std::pow(100.0, 2.0 / 3.0) * std::pow(1000.0, 2.0 / 3.0 + 0.25)));

    auto b3 = sz_bound(1.0, 500.0, 3, 0.0);
    CHECK(b3.total >= 500.0);
    CHECK_THROWS_AS(sz_bound(10, 10, 1, 0.0), std::invalid_argument);
}
