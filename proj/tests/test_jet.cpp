#include <doctest.h>

#include "support/generators.hpp"

using namespace periorb;
using testsupport::Rng;

namespace {

GermMap parse_diag(const CycloContextPtr& ctx, int D, const Rational& l1, const Rational& l2) {
    Jet2 c1(ctx, D), c2(ctx, D);
    c1.set_coeff(1, 0, CycloNum(ctx, l1));
    c2.set_coeff(0, 1, CycloNum(ctx, l2));
    return GermMap(std::move(c1), std::move(c2));
}

} // namespace

TEST_CASE("composition basics") {
    auto ctx = CycloContext::get(1);
    const int D = 12;
    GermMap id = GermMap::identity(ctx, D);
    CHECK(compose(id, id) == id);

    // linear substitution: outer (l x1, x2), inner (x1 + x2^2, x2)
    GermMap outer = parse_diag(ctx, D, Rational(3), Rational(1));
    GermMap inner = id;
    inner.component(0).set_coeff(0, 2, CycloNum::one(ctx));
    GermMap got = compose(outer, inner);
    CHECK(got.component(0).coeff(1, 0) == CycloNum(ctx, Rational(3)));
    CHECK(got.component(0).coeff(0, 2) == CycloNum(ctx, Rational(3)));
    CHECK(got.component(1).coeff(0, 1).is_one());
}

TEST_CASE("composition series of an odd cubic involution candidate") {
    // f = (-x1 + x1^3, -x2): the first component of f(f) expands to
    // x1 - 2 x1^3 + 3 x1^5 - 3 x1^7 + x1^9.
    auto ctx = CycloContext::get(2);
    const int D = 10;
    GermMap f = parse_diag(ctx, D, Rational(-1), Rational(-1));
    f.component(0).set_coeff(3, 0, CycloNum::one(ctx));
    GermMap ff = compose(f, f);
    const long expected[] = {0, 1, 0, -2, 0, 3, 0, -3, 0, 1};
    for (int d = 1; d <= 9; ++d)
        CHECK(ff.component(0).coeff(d, 0) == CycloNum(ctx, Rational(expected[d])));
    CHECK(ff.component(1).coeff(0, 1).is_one());
}

TEST_CASE("iteration") {
    auto ctx = CycloContext::get(6);
    const int D = 8;
    Jet2 c1(ctx, D), c2(ctx, D);
    c1.set_coeff(1, 0, CycloNum(ctx, Rational(-1)));
    c2.set_coeff(0, 1, CycloNum::zeta_pow(ctx, 2));
    GermMap f(std::move(c1), std::move(c2));
    CHECK(iterate(f, 1) == f);
    GermMap f6 = iterate(f, 6);
    CHECK(f6 == GermMap::identity(ctx, D));
}

TEST_CASE("second iterate of the coupled example germ") {
    // k = 2: the x1^5 and x1 x2^3 coefficients of the first component of f^2
    // are both -2.
    GermMap f = builtin_example("e2", 2);
    GermMap f2 = iterate(f, 2);
    auto ctx = f.context();
    CHECK(f2.component(0).coeff(5, 0) == CycloNum(ctx, Rational(-2)));
    CHECK(f2.component(0).coeff(1, 3) == CycloNum(ctx, Rational(-2)));
    CHECK(f2.component(0).coeff(1, 0).is_one());
}

TEST_CASE("inversion") {
    auto ctx = CycloContext::get(1);
    const int D = 10;
    GermMap id = GermMap::identity(ctx, D);
    CHECK(invert(id) == id);

    GermMap scale = parse_diag(ctx, D, Rational(2), Rational(1));
    GermMap inv = invert(scale);
    CHECK(inv.component(0).coeff(1, 0) == CycloNum(ctx, Rational(1, 2)));

    GermMap shear = id;
    shear.component(0).set_coeff(0, 2, CycloNum::one(ctx));
    GermMap shear_inv = invert(shear);
    CHECK(shear_inv.component(0).coeff(0, 2) == CycloNum(ctx, Rational(-1)));
    CHECK(compose(shear, shear_inv) == id);
    CHECK(compose(shear_inv, shear) == id);

    GermMap degenerate = parse_diag(ctx, D, Rational(1), Rational(0));
    CHECK_THROWS_AS(invert(degenerate), std::domain_error);
}

TEST_CASE("inversion is an involution on random transforms") {
    Rng rng(41);
    auto ctx = CycloContext::get(4);
    for (int t = 0; t < 40; ++t) {
        GermMap h = testsupport::random_transform(rng, ctx, 10);
        CHECK(invert(invert(h)) == h);
        CHECK(compose(h, invert(h)) == GermMap::identity(ctx, 10));
    }
}

TEST_CASE("conjugation") {
    auto ctx = CycloContext::get(2);
    const int D = 10;
    GermMap f = parse_diag(ctx, D, Rational(-1), Rational(-1));
    f.component(0).set_coeff(2, 0, CycloNum::one(ctx));
    GermMap id = GermMap::identity(ctx, D);
    CHECK(conjugate(f, id) == f);

    // diagonal linear maps commute with diagonal germs
    GermMap diag = parse_diag(ctx, D, Rational(5), Rational(7));
    GermMap lin = parse_diag(ctx, D, Rational(-1), Rational(-1));
    CHECK(conjugate(lin, diag) == lin);

    // the shear with c = a / (lambda^2 - lambda) = 1/2 removes the (2,0) term
    GermMap h = id;
    h.component(0).set_coeff(2, 0, CycloNum(ctx, Rational(1, 2)));
    GermMap g = conjugate(f, h);
    CHECK(g.component(0).coeff(2, 0).is_zero());
}

TEST_CASE("linear part of a conjugate") {
    Rng rng(5);
    auto ctx = CycloContext::get(3);
    for (int t = 0; t < 30; ++t) {
        GermMap f = testsupport::random_transform(rng, ctx, 8);
        GermMap h = testsupport::random_transform(rng, ctx, 8);
        Matrix2 lhs = conjugate(f, h).linear_part();
        Matrix2 j = h.linear_part();
        Matrix2 a = f.linear_part();
        Matrix2 ji = j.inverse();
        // J^{-1} A J
        Matrix2 rhs{ji.a11 * a.a11 + ji.a12 * a.a21, ji.a11 * a.a12 + ji.a12 * a.a22,
                    ji.a21 * a.a11 + ji.a22 * a.a21, ji.a21 * a.a12 + ji.a22 * a.a22};
        Matrix2 rhs2{rhs.a11 * j.a11 + rhs.a12 * j.a21, rhs.a11 * j.a12 + rhs.a12 * j.a22,
                     rhs.a21 * j.a11 + rhs.a22 * j.a21, rhs.a21 * j.a12 + rhs.a22 * j.a22};
        CHECK(lhs.a11 == rhs2.a11);
        CHECK(lhs.a12 == rhs2.a12);
        CHECK(lhs.a21 == rhs2.a21);
        CHECK(lhs.a22 == rhs2.a22);
    }
}

TEST_CASE("iterate additivity") {
    Rng rng(17);
    auto ctx = CycloContext::get(4);
    for (int t = 0; t < 25; ++t) {
        GermMap f = testsupport::random_transform(rng, ctx, 10);
        for (long p = 1; p <= 4; ++p)
            for (long q = 1; p + q <= 8 && q <= 4; ++q)
                CHECK(iterate(f, p + q) == compose(iterate(f, p), iterate(f, q)));
    }
}

TEST_CASE("coefficients below the truncation never depend on discarded terms") {
    Rng rng(23);
    auto ctx = CycloContext::get(3);
    for (int t = 0; t < 25; ++t) {
        GermMap f = testsupport::random_transform(rng, ctx, 16);
        GermMap g = testsupport::random_transform(rng, ctx, 16);
        GermMap full = compose(f, g);
        GermMap low = compose(f.with_degree(8), g.with_degree(8));
        CHECK(full.with_degree(8) == low);
    }
}

TEST_CASE("power substitution") {
    auto ctx = CycloContext::get(1);
    const int D = 8;
    GermMap id = GermMap::identity(ctx, D);
    GermMap sub = substitute_powers(id, 2, 3);
    CHECK(sub.component(0).coeff(2, 0).is_one());
    CHECK(sub.component(1).coeff(0, 3).is_one());

    Jet2 c1(ctx, D), c2(ctx, D);
    c1.set_coeff(1, 1, CycloNum::one(ctx));
    c2.set_coeff(0, 1, CycloNum::one(ctx));
    GermMap g(std::move(c1), std::move(c2));
    GermMap s = substitute_powers(g, 1, 2);
    CHECK(s.component(0).coeff(1, 2).is_one());
    CHECK(s.component(1).coeff(0, 2).is_one());

    Jet2 d1(ctx, D), d2(ctx, D);
    d1.set_coeff(2, 0, CycloNum::one(ctx));
    d1.set_coeff(0, 3, CycloNum::one(ctx));
    d2.set_coeff(0, 1, CycloNum::one(ctx));
    GermMap h(std::move(d1), std::move(d2));
    GermMap hs = substitute_powers(h, 3, 2);
    CHECK(hs.component(0).coeff(6, 0).is_one());
    CHECK(hs.component(0).coeff(0, 6).is_one());
    CHECK(hs.component(1).coeff(0, 2).is_one());
}

TEST_CASE("germ construction rejects constant terms") {
    auto ctx = CycloContext::get(1);
    Jet2 c1(ctx, 4), c2(ctx, 4);
    c1.set_coeff(0, 0, CycloNum::one(ctx));
    c2.set_coeff(0, 1, CycloNum::one(ctx));
    CHECK_THROWS_AS(GermMap(std::move(c1), std::move(c2)), std::invalid_argument);
}
