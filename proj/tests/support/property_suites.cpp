#include "support/property_suites.hpp"

#include <periorb/germ_io.hpp>
#include <periorb/normalform.hpp>

#include "support/generators.hpp"

namespace testsupport {

namespace {

struct SuiteRunner {
    SuiteResult result;
    Rng rng;

    SuiteRunner(std::string name, std::uint64_t seed) : rng(seed) { result.name = std::move(name); }

    void fail(const std::string& message, const GermMap* germ = nullptr) {
        ++result.failures;
        if (result.first_failure.empty()) {
            result.first_failure = message;
            if (germ) result.first_failure += "\n" + germ_to_string(*germ);
        }
    }
};

} // namespace

SuiteResult run_divisibility_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("divisibility of Dold indices", seed);
    while (r.result.cases < cases) {
        ResonantDraw draw = random_resonant_germ(r.rng);
        ++r.result.cases;
        try {
            DoldEngine engine(draw.germ, draw.M, {}, IndexBudget{32, 20});
            for (long m = 1; m <= draw.M; ++m) {
                if (draw.M % m != 0) continue;
                long P = engine.dold_index(m);
                if (P % m != 0)
                    r.fail("P_" + std::to_string(m) + " = " + std::to_string(P) +
                               " not divisible by " + std::to_string(m),
                           &draw.germ);
            }
        } catch (const NonIsolatedError&) {
            --r.result.cases; // outside the hypothesis class, redraw
        }
    }
    return r.result;
}

SuiteResult run_conjugation_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("conjugation invariance of mu, P, O", seed);
    while (r.result.cases < cases) {
        ResonantDraw draw = random_resonant_germ(r.rng);
        GermMap h = random_transform(r.rng, draw.germ.context(), draw.germ.degree());
        GermMap conj = conjugate(draw.germ, h);
        ++r.result.cases;
        try {
            DoldEngine a(draw.germ, draw.M, {}, IndexBudget{32, 20});
            DoldEngine b(conj, draw.M, {}, IndexBudget{32, 20});
            for (long m = 1; m <= draw.M; ++m) {
                if (draw.M % m != 0) continue;
                if (a.mu(m) != b.mu(m))
                    r.fail("mu differs under conjugation at m=" + std::to_string(m), &draw.germ);
                if (a.dold_index(m) != b.dold_index(m))
                    r.fail("P differs under conjugation at m=" + std::to_string(m), &draw.germ);
                if (a.orbit_count(m) != b.orbit_count(m))
                    r.fail("O differs under conjugation at m=" + std::to_string(m), &draw.germ);
            }
        } catch (const NonIsolatedError&) {
            --r.result.cases;
        }
    }
    return r.result;
}

SuiteResult run_prod_ind_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("multiplicativity of zero orders under composition", seed);
    auto ctx = CycloContext::get(4);
    while (r.result.cases < cases) {
        IsolatedGerm h1 = random_isolated_zero_germ(r.rng, ctx, 20);
        IsolatedGerm h2 = random_isolated_zero_germ(r.rng, ctx, 20);
        if (h1.order * h2.order > 18) continue;
        GermMap comp = compose(h1.germ, h2.germ);
        ++r.result.cases;
        try {
            MultiplicityResult res = zero_order(comp);
            if (!res.trusted || res.order != h1.order * h2.order)
                r.fail("order(h1 o h2) = " + std::to_string(res.order) + " != " +
                           std::to_string(h1.order) + " * " + std::to_string(h2.order),
                       &comp);
        } catch (const NonIsolatedError&) {
            --r.result.cases;
        }
    }
    return r.result;
}

SuiteResult run_prod1_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("additivity of orders for component products", seed);
    auto ctx = CycloContext::get(4);
    while (r.result.cases < cases) {
        IsolatedGerm a = random_isolated_zero_germ(r.rng, ctx, 20);
        IsolatedGerm b = random_isolated_zero_germ(r.rng, ctx, 20);
        // share the second component: f = (f1, h), g = (f2, h)
        GermMap f(a.germ.component(0), b.germ.component(1));
        GermMap g(b.germ.component(0), b.germ.component(1));
        long pf, pg;
        try {
            pf = zero_order(f).order;
            pg = zero_order(g).order;
        } catch (const NonIsolatedError&) {
            continue;
        } catch (const std::logic_error&) {
            continue;
        }
        if (pf + pg > 24) continue;
        GermMap prod(f.component(0) * g.component(0), f.component(1));
        ++r.result.cases;
        try {
            MultiplicityResult res = zero_order(prod);
            if (res.order != pf + pg)
                r.fail("order((f1 f2, h)) = " + std::to_string(res.order) + " != " +
                           std::to_string(pf) + " + " + std::to_string(pg),
                       &prod);
        } catch (const NonIsolatedError&) {
            --r.result.cases;
        }
    }
    return r.result;
}

SuiteResult run_unit_matrix_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("invariance under unit germ-matrix multiplication", seed);
    auto ctx = CycloContext::get(3);
    while (r.result.cases < cases) {
        IsolatedGerm g = random_isolated_zero_germ(r.rng, ctx, 20);
        const int D = g.germ.degree();
        // matrix of function germs with invertible constant part
        Jet2 a11(ctx, D), a12(ctx, D), a21(ctx, D), a22(ctx, D);
        Jet2* entries[4] = {&a11, &a12, &a21, &a22};
        for (Jet2* e : entries) {
            e->set_coeff(0, 0, random_cyclo(r.rng, ctx));
            if (r.rng.chance(60)) {
                int d = static_cast<int>(r.rng.pick(1, 2));
                int i1 = static_cast<int>(r.rng.pick(0, d));
                e->add_term(i1, d - i1, CycloNum(ctx, r.rng.small_rational()));
            }
        }
        CycloNum det0 = a11.coeff(0, 0) * a22.coeff(0, 0) - a12.coeff(0, 0) * a21.coeff(0, 0);
        if (det0.is_zero()) continue;
        const Jet2 &g1 = g.germ.component(0), &g2 = g.germ.component(1);
        GermMap f(g1 * a11 + g2 * a21, g1 * a12 + g2 * a22);
        ++r.result.cases;
        try {
            MultiplicityResult res = zero_order(f);
            if (res.order != g.order)
                r.fail("order changed from " + std::to_string(g.order) + " to " +
                           std::to_string(res.order),
                       &f);
        } catch (const NonIsolatedError&) {
            --r.result.cases;
        }
    }
    return r.result;
}

SuiteResult run_shub_sullivan_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("index equality along eigenvalue-compatible iterates", seed);
    auto ctx = CycloContext::get(6);
    while (r.result.cases < cases) {
        const long m = r.rng.pick(2, 4);
        // each eigenvalue is 1 or has lambda^m != 1
        auto draw_lambda = [&]() -> CycloNum {
            switch (r.rng.pick(0, 3)) {
                case 0: return CycloNum::one(ctx);
                case 1: return CycloNum(ctx, Rational(2));
                case 2: return CycloNum(ctx, Rational(-3, 2));
                default: {
                    CycloNum z = CycloNum::zeta_pow(ctx, r.rng.pick(1, 5));
                    return z;
                }
            }
        };
        CycloNum l1 = draw_lambda(), l2 = draw_lambda();
        if (!(l1.is_one() || !l1.pow(m).is_one())) continue;
        if (!(l2.is_one() || !l2.pow(m).is_one())) continue;

        const int D = 16;
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, l1);
        c2.set_coeff(0, 1, l2);
        // eigenvalue-1 directions need a nonlinear term to keep 0 isolated
        if (l1.is_one()) c1.set_coeff(static_cast<int>(r.rng.pick(2, 3)), 0, CycloNum(ctx, r.rng.small_rational()));
        if (l2.is_one()) c2.set_coeff(0, static_cast<int>(r.rng.pick(2, 3)), CycloNum(ctx, r.rng.small_rational()));
        GermMap f(std::move(c1), std::move(c2));
        for (int i = 0; i < 2; ++i) {
            int d = static_cast<int>(r.rng.pick(2, 3));
            int i1 = static_cast<int>(r.rng.pick(0, d));
            f.component(static_cast<int>(r.rng.pick(0, 1)))
                .add_term(i1, d - i1, CycloNum(ctx, r.rng.small_rational(false)));
        }
        ++r.result.cases;
        try {
            IndexEngine engine(f, m, {}, IndexBudget{32, 20});
            long mu1 = engine.mu(1), mum = engine.mu(m);
            if (mu1 != mum)
                r.fail("mu(f) = " + std::to_string(mu1) + " but mu(f^" + std::to_string(m) +
                           ") = " + std::to_string(mum),
                       &f);
        } catch (const NonIsolatedError&) {
            --r.result.cases;
        }
    }
    return r.result;
}

SuiteResult run_cronin_dual_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("fast path agrees with the dual-space order", seed);
    auto ctx = CycloContext::get(4);
    while (r.result.cases < cases) {
        IsolatedGerm g = random_isolated_zero_germ(r.rng, ctx, 20);
        auto fast = cronin_zero_order(g.germ);
        if (!fast) continue; // only coprime-form draws exercise the pair
        if (fast->order > 14) continue;
        ++r.result.cases;
        MultiplicityResult dual = dual_space_zero_order(g.germ, g.germ.degree());
        if (dual.order != fast->order)
            r.fail("dual order " + std::to_string(dual.order) + " != product bound " +
                       std::to_string(fast->order),
                   &g.germ);
    }
    return r.result;
}

SuiteResult run_iterate_resonance_suite(int cases, std::uint64_t seed) {
    SuiteRunner r("iterates of normal forms stay resonant", seed);
    while (r.result.cases < cases) {
        // random diagonal root-of-unity linear part, arbitrary tail
        static const std::pair<long, long> pairs[] = {{2, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 6}};
        auto [m1, m2] = pairs[r.rng.pick(0, 4)];
        long L = std::lcm(m1, m2);
        LinearSpec spec(L, L / m1, L / m2, true);
        auto ctx = spec.context();
        const int D = 14;
        const int rdeg = static_cast<int>(r.rng.pick(4, 6));
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, spec.lambda1());
        c2.set_coeff(0, 1, spec.lambda2());
        GermMap f(std::move(c1), std::move(c2));
        int extras = static_cast<int>(r.rng.pick(1, 3));
        for (int i = 0; i < extras; ++i) {
            int d = static_cast<int>(r.rng.pick(2, rdeg));
            int i1 = static_cast<int>(r.rng.pick(0, d));
            f.component(static_cast<int>(r.rng.pick(0, 1)))
                .add_term(i1, d - i1, CycloNum(ctx, r.rng.small_rational()));
        }
        ++r.result.cases;
        NormalFormResult nf = poincare_dulac(f, rdeg);
        for (long k = 1; k <= 6; ++k)
            if (!check_iterate_resonance(nf.normalized, k, rdeg))
                r.fail("non-resonant term in iterate " + std::to_string(k), &nf.normalized);
    }
    return r.result;
}

std::vector<SuiteResult> run_all_property_suites(int cases, std::uint64_t seed) {
    return {
        run_divisibility_suite(cases, seed + 1),
        run_conjugation_suite(cases, seed + 2),
        run_prod_ind_suite(cases, seed + 3),
        run_prod1_suite(cases, seed + 4),
        run_unit_matrix_suite(cases, seed + 5),
        run_shub_sullivan_suite(cases, seed + 6),
        run_cronin_dual_suite(cases, seed + 7),
        run_iterate_resonance_suite(cases, seed + 8),
    };
}

} // namespace testsupport
