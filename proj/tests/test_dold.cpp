#include <doctest.h>

#include <algorithm>

#include "support/generators.hpp"

using namespace periorb;

namespace {

Jet2 jet_of(const CycloContextPtr& ctx, int D,
            std::initializer_list<std::tuple<int, int, long>> terms) {
    Jet2 j(ctx, D);
    for (const auto& [i1, i2, c] : terms) j.set_coeff(i1, i2, CycloNum(ctx, Rational(c)));
    return j;
}

} // namespace

TEST_CASE("prime subset expansion") {
    auto subsets12 = prime_subsets(12);
    REQUIRE(subsets12.size() == 4);
    std::sort(subsets12.begin(), subsets12.end());
    CHECK(subsets12[0] == std::pair<long, int>{2, 1});
    CHECK(subsets12[1] == std::pair<long, int>{4, -1});
    CHECK(subsets12[2] == std::pair<long, int>{6, -1});
    CHECK(subsets12[3] == std::pair<long, int>{12, 1});

    auto subsets1 = prime_subsets(1);
    REQUIRE(subsets1.size() == 1);
    CHECK(subsets1[0] == std::pair<long, int>{1, 1});

    auto subsets30 = prime_subsets(30);
    CHECK(subsets30.size() == 8);
    int plus = 0, minus = 0;
    for (auto [q, s] : subsets30) (s > 0 ? plus : minus)++;
    CHECK(plus == 4);
    CHECK(minus == 4);
}

TEST_CASE("admissible periods from the linear part") {
    auto diag = [](long L, long k1, long k2) {
        auto ctx = CycloContext::get(L);
        return Matrix2{CycloNum::zeta_pow(ctx, k1), CycloNum::zero(ctx), CycloNum::zero(ctx),
                       CycloNum::zeta_pow(ctx, k2)};
    };
    CHECK(admissible_periods(diag(6, 3, 2)).periods == std::set<long>{1, 2, 3, 6});
    CHECK(admissible_periods(diag(12, 3, 2)).periods == std::set<long>{1, 4, 6, 12});

    auto ctx1 = CycloContext::get(1);
    Matrix2 hyp{CycloNum(ctx1, Rational(2)), CycloNum::zero(ctx1), CycloNum::zero(ctx1),
                CycloNum(ctx1, Rational(3))};
    CHECK(admissible_periods(hyp).periods == std::set<long>{1});

    // Jordan block: double eigenvalue contributes its order once
    auto ctx4 = CycloContext::get(4);
    Matrix2 jordan{CycloNum::zeta_pow(ctx4, 1), CycloNum::zero(ctx4), CycloNum::one(ctx4),
                   CycloNum::zeta_pow(ctx4, 1)};
    CHECK(admissible_periods(jordan).periods == std::set<long>{1, 4});

    // -zeta candidates matter at odd levels: eigenvalue -1 in Q(zeta_3)
    auto ctx3 = CycloContext::get(3);
    Matrix2 neg{CycloNum(ctx3, Rational(-1)), CycloNum::zero(ctx3), CycloNum::zero(ctx3),
                CycloNum::zeta_pow(ctx3, 1)};
    CHECK(admissible_periods(neg).periods == std::set<long>{1, 2, 3, 6});
}

TEST_CASE("Dold indices of the coupled example") {
    GermMap f = builtin_example("e2", 2);
    DoldEngine engine(f, 6);
    CHECK(engine.dold_index(6) == 6);
    CHECK(engine.dold_index(2) == 4);
    CHECK(engine.dold_index(1) == 1);
    CHECK(engine.orbit_count(2) == 2);
    CHECK(engine.orbit_count(3) == 2);
    CHECK(engine.orbit_count(6) == 1);
}

TEST_CASE("orbit counts of the coprime-order coupled family") {
    Rational a[2][2] = {{Rational(1), Rational(2)}, {Rational(1), Rational(1)}};
    GermMap f = witness_c8(2, 3, a);
    DoldEngine engine(f, 6);
    CHECK(engine.dold_index(6) == 6);
    CHECK(engine.orbit_count(6) == 1);
}

TEST_CASE("orbit count of the doubled odd involution") {
    auto ctx = CycloContext::get(2);
    GermMap f(jet_of(ctx, 16, {{1, 0, -1}, {3, 0, 1}}), jet_of(ctx, 16, {{0, 1, -1}, {0, 3, 1}}));
    DoldEngine engine(f, 2);
    CHECK(engine.mu(2) == 9);
    CHECK(engine.dold_index(2) == 8);
    CHECK(engine.orbit_count(2) == 4);
    // both multiplicity routes agree on the iterate displacement
    GermMap disp = GermMap::identity(ctx, 16) - iterate(f.with_degree(16), 2);
    CHECK(cronin_zero_order(disp)->order == 9);
    CHECK(dual_space_zero_order(disp, 16).order == 9);
}

TEST_CASE("divisor-sum consistency") {
    GermMap e2 = builtin_example("e2", 2);
    DoldReport rep = index_consistency(e2, 6);
    CHECK(rep.consistent);
    CHECK(rep.mu_M == 17);
    REQUIRE(rep.rows.size() == 4);
    long sum = 0;
    for (const auto& row : rep.rows) sum += row.P;
    CHECK(sum == 17);

    // hyperbolic linear part with a cubic tail: every index is 1
    auto ctx = CycloContext::get(1);
    GermMap hyp(jet_of(ctx, 16, {{1, 0, 2}, {3, 0, 1}}), jet_of(ctx, 16, {{0, 1, 3}, {0, 2, 1}}));
    DoldReport hrep = index_consistency(hyp, 6);
    CHECK(hrep.consistent);
    CHECK(hrep.mu_M == 1);
    REQUIRE(hrep.rows.size() == 1);
    CHECK(hrep.rows[0].m == 1);

    // Jordan counterexample at M = 2: 3 = 1 + 2
    LinearSpec spec(2, 1, 1, false);
    GermMap w = witness_germ("b1p", spec, 2);
    DoldReport wrep = index_consistency(w, 2);
    CHECK(wrep.consistent);
    CHECK(wrep.mu_M == 3);
    CHECK(wrep.rows.back().P == 2);
}

TEST_CASE("indices vanish off the admissible period set") {
    // admissible periods {1, 2}: P_3 and P_6 must be zero
    auto ctx = CycloContext::get(2);
    GermMap f(jet_of(ctx, 16, {{1, 0, -1}, {3, 0, 1}}), jet_of(ctx, 16, {{0, 1, 2}}));
    DoldEngine engine(f, 6);
    CHECK(engine.admissible().periods == std::set<long>{1, 2});
    CHECK(engine.dold_index(3) == 0);
    CHECK(engine.dold_index(6) == 0);
    CHECK(engine.report(6).consistent);
}

TEST_CASE("orbit counts are positive exactly on realizable periods") {
    // witness library: positive cases have O >= 2, counterexamples O == 1,
    // and in both the admissible set realizes M
    struct Row { long L, k1, k2; bool diag; long M; const char* tag; bool positive; };
    Row rows[] = {
        {2, 1, 1, true, 2, "b1", true},    {7, 1, 3, true, 7, "b2", true},
        {6, 2, 5, true, 6, "b3", true},    {12, 3, 2, true, 12, "b4", true},
        {4, 1, 1, false, 4, "b1p", false}, {5, 1, 2, true, 5, "b2p", false},
        {6, 3, 1, true, 6, "b3p", false},  {6, 3, 2, true, 6, "b4p", false},
    };
    for (const auto& row : rows) {
        LinearSpec spec(row.L, row.k1, row.k2, row.diag);
        GermMap w = row.positive ? positive_witness(row.tag, spec, row.M)
                                 : witness_germ(row.tag, spec, row.M);
        DoldEngine engine(w, row.M);
        CHECK(engine.admissible().contains(row.M));
        long O = engine.orbit_count(row.M);
        if (row.positive)
            CHECK(O >= 2);
        else
            CHECK(O == 1);
    }
}
