#include <doctest.h>

#include <numeric>

#include "support/generators.hpp"

using namespace periorb;
using testsupport::Rng;
using testsupport::random_cyclo;

namespace {

// Oracle: naive integer polynomial multiplication, constant term first.
std::vector<Integer> mul_oracle(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

TEST_CASE("cyclotomic polynomials at small levels") {
    CHECK(cyclotomic_poly(1) == std::vector<Integer>{-1, 1});  // X - 1
    CHECK(cyclotomic_poly(2) == std::vector<Integer>{1, 1});   // X + 1
    // X^12 - 1 = Phi_1 Phi_2 Phi_3 Phi_4 Phi_6 Phi_12 forces X^4 - X^2 + 1.
    CHECK(cyclotomic_poly(12) == std::vector<Integer>{1, 0, -1, 0, 1});
}

TEST_CASE("product of cyclotomic polynomials is X^L - 1") {
    for (long L = 1; L <= 200; ++L) {
        std::vector<Integer> prod{1};
        for (long d = 1; d <= L; ++d)
            if (L % d == 0) prod = mul_oracle(prod, cyclotomic_poly(d));
        REQUIRE(prod.size() == static_cast<size_t>(L) + 1);
        CHECK(prod.front() == -1);
        CHECK(prod.back() == 1);
        for (size_t i = 1; i < prod.size() - 1; ++i) CHECK(prod[i] == 0);
    }
}

TEST_CASE("level cap is enforced") {
    CHECK_THROWS_AS(cyclotomic_poly(10001), std::length_error);
    CHECK_THROWS_AS(cyclotomic_poly(0), std::invalid_argument);
}

TEST_CASE("basic arithmetic identities") {
    auto c4 = CycloContext::get(4);
    CycloNum i = CycloNum::zeta_pow(c4, 1);
    CHECK((i * i).str() == "-1");

    auto c3 = CycloContext::get(3);
    CycloNum w = CycloNum::zeta_pow(c3, 1);
    CHECK((w + w * w).str() == "-1");

    auto c5 = CycloContext::get(5);
    CycloNum u = CycloNum::one(c5) + CycloNum::zeta_pow(c5, 1);
    CHECK((u / u).is_one());
}

TEST_CASE("field axioms on random triples") {
    Rng rng(2024);
    for (long L : {3L, 4L, 5L, 6L, 12L}) {
        auto ctx = CycloContext::get(L);
        for (int t = 0; t < 50; ++t) {
            CycloNum a = random_cyclo(rng, ctx), b = random_cyclo(rng, ctx),
                     c = random_cyclo(rng, ctx);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK(a.inverse().inverse() == a);
            }
        }
    }
}

TEST_CASE("root orders") {
    auto c12 = CycloContext::get(12);
    CHECK(root_order(CycloNum::zeta_pow(c12, 8)) == 3);

    auto c6 = CycloContext::get(6);
    CHECK(root_order(CycloNum(c6, Rational(-1))) == 2);

    // (1 + zeta_5)^5 != 1, so 1 + zeta_5 is not a root of unity of level 5.
    auto c5 = CycloContext::get(5);
    CycloNum u = CycloNum::one(c5) + CycloNum::zeta_pow(c5, 1);
    CycloNum p = CycloNum::one(c5);
    for (int k = 0; k < 5; ++k) p *= u;
    REQUIRE_FALSE(p.is_one());
    CHECK(root_order(u) == std::nullopt);
}

TEST_CASE("root order is minimal, exhaustively") {
    for (long L = 1; L <= 60; ++L) {
        auto ctx = CycloContext::get(L);
        for (long k = 0; k < L; ++k) {
            CycloNum u = CycloNum::zeta_pow(ctx, k);
            auto ord = root_order(u);
            REQUIRE(ord.has_value());
            long expected = (k == 0) ? 1 : L / std::gcd(L, k);
            CHECK(*ord == expected);
            CHECK(u.pow(*ord).is_one());
            for (long j = 1; j < *ord; ++j) CHECK_FALSE(u.pow(j).is_one());
        }
    }
}

TEST_CASE("power relations between roots of unity") {
    auto c5 = CycloContext::get(5);
    RootOfUnity l1(c5, 1), l2(c5, 2);
    CHECK(power_relation(l1, l2) == 2);
    CHECK(power_relation(l2, l1) == 3);
    // alpha * beta = 6 = M + 1 with M = 5

    auto c7 = CycloContext::get(7);
    CHECK(power_relation(RootOfUnity(c7, 1), RootOfUnity(c7, 3)) == 3);
    CHECK(power_relation(RootOfUnity(c7, 3), RootOfUnity(c7, 1)) == 5);

    auto c6 = CycloContext::get(6);
    // powers of -1 never reach a primitive cube root
    CHECK(power_relation(RootOfUnity(c6, 3), RootOfUnity(c6, 2)) == std::nullopt);
}

TEST_CASE("coefficient grammar round trip") {
    auto c12 = CycloContext::get(12);
    for (const char* text : {"-1", "2/3*z^5", "z^6+1/2", "z", "0", "1/2+z^2", "-2/3+z-1/5*z^3"}) {
        CycloNum v = CycloNum::parse(c12, text);
        CycloNum again = CycloNum::parse(c12, v.str());
        CHECK(v == again);
        CHECK(v.str() == again.str());
    }
    CHECK(CycloNum::parse(c12, "z^6+1/2") == CycloNum::zeta_pow(c12, 6) + CycloNum(c12, Rational(1, 2)));
    CHECK_THROWS_AS(CycloNum::parse(c12, ""), std::invalid_argument);
    CHECK_THROWS_AS(CycloNum::parse(c12, "2*z"), std::invalid_argument);
    CHECK_THROWS_AS(CycloNum::parse(c12, "1//2"), std::invalid_argument);
}

TEST_CASE("printing stays inside the grammar on random values") {
    Rng rng(7);
    for (long L : {4L, 5L, 12L}) {
        auto ctx = CycloContext::get(L);
        for (int t = 0; t < 100; ++t) {
            CycloNum v = random_cyclo(rng, ctx);
            CHECK(CycloNum::parse(ctx, v.str()) == v);
        }
    }
}

TEST_CASE("context mismatch is an error") {
    auto a = CycloNum::one(CycloContext::get(3));
    auto b = CycloNum::one(CycloContext::get(4));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a == b, std::invalid_argument);
}

TEST_CASE("division by zero") {
    auto ctx = CycloContext::get(5);
    CHECK_THROWS_AS(CycloNum::one(ctx) / CycloNum::zero(ctx), std::domain_error);
}
