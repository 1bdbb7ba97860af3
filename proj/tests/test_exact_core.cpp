#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prox/bipoly.hpp"
#include "prox/rng.hpp"
#include "prox/unipoly.hpp"

using namespace prox;

namespace {

// Independent evaluation oracle: naive power sums, no Horner.
Rational eval_power_sum(const UniPoly& p, const Rational& x) {
    Rational acc(0);
    for (int i = 0; i <= p.degree(); ++i) {
        Rational pw(1);
        for (int k = 0; k < i; ++k) pw *= x;
        acc += p.coeff(i) * pw;
    }
    return acc;
}

Rational random_rat(SplitMix64& rng) {
    int64_t num = rng.range(-40, 40);
    int64_t den = rng.range(1, 12);
    return Rational(num, den);
}

UniPoly random_unipoly(SplitMix64& rng, int max_deg) {
    int d = static_cast<int>(rng.below(static_cast<uint64_t>(max_deg) + 1));
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(random_rat(rng));
    return UniPoly(std::move(c));
}

BiPoly random_bipoly(SplitMix64& rng, int max_deg, int terms) {
    BiPoly p;
    for (int t = 0; t < terms; ++t) {
        int i = static_cast<int>(rng.below(static_cast<uint64_t>(max_deg) + 1));
        int j = static_cast<int>(rng.below(static_cast<uint64_t>(max_deg) + 1));
        p.add(i, j, random_rat(rng));
    }
    return p;
}

BiPoly nonzero_random_bipoly(SplitMix64& rng, int max_deg, int terms) {
    for (;;) {
        BiPoly p = random_bipoly(rng, max_deg, terms);
        if (!p.is_zero()) return p;
    }
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(to_string(rat(-6, 4)) == "-3/2");
    CHECK(parse_rational("7/3") == rat(7, 3));
    CHECK(parse_rational("-5") == rat(-5));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat(1, 0), std::domain_error);
    CHECK(sqrt_exact(rat(9, 4)) == rat(3, 2));
    CHECK(!sqrt_exact(rat(2)).has_value());
    CHECK(!sqrt_exact(rat(-4)).has_value());
    CHECK(isqrt(Integer(48)) == 6);
    CHECK(floor_rat(rat(-7, 2)) == -4);
}

TEST_CASE("field axioms on randomized triples") {
    SplitMix64 rng(0xC0FFEE);
    for (int it = 0; it < 200; ++it) {
        Rational a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (c != 0) CHECK((a / c) * c == a);
    }
}

TEST_CASE("poly_eval") {
    UniPoly cube({rat(0), rat(0), rat(0), rat(1)});
    CHECK(poly_eval(cube, rat(2)) == rat(8));
    CHECK(poly_eval(UniPoly::zero(), rat(5)) == rat(0));

    UniPoly p({rat(0), rat(0), rat(1), rat(1)});  // x^3 + x^2
    CHECK(poly_eval(p, rat(-1, 3)) == rat(2, 27));
    // Cross-check Horner against the naive power-sum oracle.
    SplitMix64 rng(17);
    for (int it = 0; it < 100; ++it) {
        UniPoly q = random_unipoly(rng, 6);
        Rational x = random_rat(rng);
        CHECK(poly_eval(q, x) == eval_power_sum(q, x));
    }
}

TEST_CASE("poly_compose_affine") {
    UniPoly cube({rat(0), rat(0), rat(0), rat(1)});
    CHECK(poly_compose_affine(cube, rat(-1), rat(0)) == -cube);

    UniPoly sq({rat(0), rat(0), rat(1)});
    CHECK(poly_compose_affine(sq, rat(1), rat(1)) == UniPoly({rat(1), rat(2), rat(1)}));

    // p = x^3 + x^2 has a half-turn symmetry: p(-x - 2/3) + p(x) == 4/27.
    UniPoly p({rat(0), rat(0), rat(1), rat(1)});
    UniPoly lhs = poly_compose_affine(p, rat(-1), rat(-2, 3)) + p;
    CHECK(lhs == UniPoly::constant(rat(4, 27)));

    // Identity composition.
    SplitMix64 rng(23);
    for (int it = 0; it < 50; ++it) {
        UniPoly q = random_unipoly(rng, 6);
        CHECK(poly_compose_affine(q, rat(1), rat(0)) == q);
    }

    // Composition agrees with pointwise evaluation.
    for (int it = 0; it < 50; ++it) {
        UniPoly q = random_unipoly(rng, 5);
        Rational a = random_rat(rng), b = random_rat(rng), x = random_rat(rng);
        CHECK(poly_eval(poly_compose_affine(q, a, b), x) == poly_eval(q, a * x + b));
    }
}

TEST_CASE("primitive_part") {
    BiPoly f;
    f.set(1, 0, rat(2));
    f.set(0, 1, rat(2));
    BiPoly expect;
    expect.set(1, 0, rat(1));
    expect.set(0, 1, rat(1));
    CHECK(primitive_part(f) == expect);

    CHECK(primitive_part(BiPoly::monomial(2, 0, rat(1, 2))) == BiPoly::monomial(2, 0));

    BiPoly g;
    g.set(2, 0, rat(6));
    g.set(0, 2, rat(-9));
    BiPoly eg;
    eg.set(2, 0, rat(2));
    eg.set(0, 2, rat(-3));
    CHECK(primitive_part(g) == eg);

    // Sign normalization: lex-leading coefficient positive.
    BiPoly h;
    h.set(1, 0, rat(-4));
    h.set(0, 1, rat(2));
    BiPoly eh;
    eh.set(1, 0, rat(2));
    eh.set(0, 1, rat(-1));
    CHECK(primitive_part(h) == eh);

    CHECK_THROWS_AS(primitive_part(BiPoly::zero()), std::domain_error);
}

TEST_CASE("bipoly arithmetic and division") {
    BiPoly x = BiPoly::monomial(1, 0);
    BiPoly xp = BiPoly::monomial(0, 1);
    BiPoly f = (x - xp) * (x + BiPoly::constant(rat(1)));
    CHECK(f.total_degree() == 2);
    CHECK(f.eval(rat(3), rat(3)) == rat(0));
    CHECK(bipoly_divides(x - xp, f));
    CHECK(bipoly_divide_exact(f, x - xp) == x + BiPoly::constant(rat(1)));
    CHECK(!bipoly_divides(x + xp, f));
    CHECK_THROWS_AS(bipoly_divide_exact(f, x + xp), std::domain_error);
}

TEST_CASE("bipoly_gcd fixtures") {
    BiPoly x = BiPoly::monomial(1, 0);
    BiPoly xp = BiPoly::monomial(0, 1);
    BiPoly diag = x - xp;

    BiPoly f = diag * (x + BiPoly::constant(rat(1)));
    BiPoly g = diag * (xp + BiPoly::constant(rat(2)));
    CHECK(bipoly_gcd(f, g) == canonical_form(diag));

    CHECK(bipoly_gcd(x * x - xp * xp, diag) == canonical_form(diag));

    CHECK_THROWS_AS(bipoly_gcd(BiPoly::zero(), BiPoly::zero()), std::domain_error);
}

TEST_CASE("bipoly_gcd properties") {
    SplitMix64 rng(0xABCDEF);
    int done = 0;
    while (done < 60) {
        BiPoly f = nonzero_random_bipoly(rng, 3, 4);
        BiPoly g = nonzero_random_bipoly(rng, 3, 4);
        BiPoly d = bipoly_gcd(f, g);
        CHECK(bipoly_divides(d, f));
        CHECK(bipoly_divides(d, g));
        CHECK(bipoly_gcd(g, f) == d);
        ++done;
    }

    // gcd(f*g, h*g) is divisible by primitive_part(g).
    for (int it = 0; it < 40; ++it) {
        BiPoly f = nonzero_random_bipoly(rng, 2, 3);
        BiPoly h = nonzero_random_bipoly(rng, 2, 3);
        BiPoly g = nonzero_random_bipoly(rng, 2, 3);
        BiPoly d = bipoly_gcd(f * g, h * g);
        CHECK(bipoly_divides(primitive_part(g), d));
    }
}

TEST_CASE("bipoly exact division round trip") {
    SplitMix64 rng(0xFACE);
    for (int it = 0; it < 60; ++it) {
        BiPoly a = nonzero_random_bipoly(rng, 3, 4);
        BiPoly b = nonzero_random_bipoly(rng, 3, 4);
        BiPoly prod = a * b;
        CHECK(bipoly_divides(b, prod));
        CHECK(bipoly_divide_exact(prod, b) == a);
    }
}
