#include "periorb/classify.hpp"

#include "periorb/normalform.hpp"

#include <atomic>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace periorb {

LinearSpec::LinearSpec(long level_, long k1_, long k2_, bool diagonalizable_)
    : level(level_), k1(k1_), k2(k2_), diagonalizable(diagonalizable_) {
    if (level < 1) throw std::invalid_argument("context level must be positive");
    k1 = ((k1 % level) + level) % level;
    k2 = ((k2 % level) + level) % level;
    if (!diagonalizable && k1 != k2)
        throw std::invalid_argument("a non-diagonalizable 2x2 matrix has equal eigenvalues");
}

long LinearSpec::order1() const { return k1 == 0 ? 1 : level / std::gcd(level, k1); }
long LinearSpec::order2() const { return k2 == 0 ? 1 : level / std::gcd(level, k2); }

Matrix2 LinearSpec::matrix(int) const {
    auto ctx = context();
    Matrix2 m{lambda1(), CycloNum::zero(ctx), CycloNum::zero(ctx), lambda2()};
    if (!diagonalizable) m.a21 = CycloNum::one(ctx);
    return m;
}

std::string LinearSpec::str() const {
    std::ostringstream out;
    out << "L=" << level << " k1=" << k1 << " k2=" << k2
        << (diagonalizable ? "" : " jordan") << " orders=(" << order1() << "," << order2() << ")";
    return out.str();
}

std::string VerdictB::describe() const {
    std::ostringstream out;
    switch (outcome) {
        case Outcome::guaranteed: out << "guaranteed"; break;
        case Outcome::not_guaranteed: out << "not_guaranteed"; break;
        case Outcome::no_period_M: out << "no_period_M"; break;
    }
    if (!tag.empty()) out << " (" << tag << ")";
    if (alpha_beta)
        out << ": alpha=" << alpha_beta->first << " beta=" << alpha_beta->second
            << " alpha*beta=" << alpha_beta->first * alpha_beta->second;
    if (ratio) out << ": d=" << *ratio;
    if (gcd_max) out << ": gcd=" << gcd_max->first << " max=" << gcd_max->second;
    return out.str();
}

VerdictB classify_linear(const LinearSpec& spec, long M) {
    if (M < 2) throw std::invalid_argument("classification requires M > 1");
    VerdictB v;

    // Sort eigenvalues by order; every case below assumes mA <= mB.
    long mA = spec.order1(), mB = spec.order2();
    CycloNum lA = spec.lambda1(), lB = spec.lambda2();
    long kA = spec.k1, kB = spec.k2;
    if (mA > mB) {
        std::swap(mA, mB);
        std::swap(lA, lB);
        std::swap(kA, kB);
    }

    const long L = std::lcm(mA, mB);
    const bool realizable = (mA == M) || (mB == M) || (L == M);
    if (!realizable) {
        v.outcome = Outcome::no_period_M;
        return v;
    }

    if (L != M) {
        // Exactly one order equals M and the other does not divide M: the
        // spectral-gap family, never guaranteed.
        v.outcome = Outcome::not_guaranteed;
        v.tag = "b0p";
        return v;
    }

    if (mA == M && mB == M) {
        if (lA == lB) {
            v.outcome = spec.diagonalizable ? Outcome::guaranteed : Outcome::not_guaranteed;
            v.tag = spec.diagonalizable ? "b1" : "b1p";
            return v;
        }
        auto ctx = spec.context();
        RootOfUnity r1(ctx, spec.k1), r2(ctx, spec.k2);
        auto alpha = power_relation(r1, r2);
        auto beta = power_relation(r2, r1);
        if (!alpha || !beta) throw std::logic_error("primitive M-th roots must be power-related");
        if (*alpha <= 1 || *alpha >= M || *beta <= 1 || *beta >= M)
            throw std::logic_error("power relation exponents outside (1, M)");
        long prod = *alpha * *beta;
        if (prod % M != 1) throw std::logic_error("alpha*beta != 1 mod M");
        v.alpha_beta = {*alpha, *beta};
        if (prod > M + 1) {
            v.outcome = Outcome::guaranteed;
            v.tag = "b2";
        } else {
            v.outcome = Outcome::not_guaranteed;
            v.tag = "b2p";
        }
        return v;
    }

    if (mB == M) {
        if (M % mA != 0) throw std::logic_error("lcm = M forces the smaller order to divide M");
        long d = M / mA;
        v.ratio = d;
        if (lB.pow(d) != lA) {
            v.outcome = Outcome::guaranteed;
            v.tag = "b3";
        } else {
            v.outcome = Outcome::not_guaranteed;
            v.tag = "b3p";
        }
        return v;
    }

    // both orders below M with lcm M
    long g = std::gcd(mA, mB);
    v.gcd_max = {g, mB};
    if (g > 1) {
        v.outcome = Outcome::guaranteed;
        v.tag = "b4";
    } else {
        v.outcome = Outcome::not_guaranteed;
        v.tag = "b4p";
    }
    return v;
}

namespace {

int witness_degree(long M, int max_term) {
    return std::max(initial_truncation(M), max_term);
}

// Swap of the two coordinates: components exchanged, exponents transposed.
GermMap swap_coordinates(const GermMap& g) {
    Jet2 c1(g.context(), g.degree()), c2(g.context(), g.degree());
    for (const auto& [e, c] : g.component(1).terms()) c1.set_coeff(e.second, e.first, c);
    for (const auto& [e, c] : g.component(0).terms()) c2.set_coeff(e.second, e.first, c);
    return GermMap(std::move(c1), std::move(c2));
}

GermMap c8_germ(const CycloContextPtr& ctx, const CycloNum& l1, const CycloNum& l2, long m1,
                long m2, const Rational a[2][2], int degree) {
    Jet2 c1(ctx, degree), c2(ctx, degree);
    c1.set_coeff(1, 0, l1);
    c1.set_coeff(static_cast<int>(m1) + 1, 0, CycloNum(ctx, a[0][0]));
    c1.set_coeff(1, static_cast<int>(m2), CycloNum(ctx, a[0][1]));
    c2.set_coeff(0, 1, l2);
    c2.set_coeff(static_cast<int>(m1), 1, CycloNum(ctx, a[1][0]));
    c2.set_coeff(0, static_cast<int>(m2) + 1, CycloNum(ctx, a[1][1]));
    return GermMap(std::move(c1), std::move(c2));
}

const Rational kDefaultC8[2][2] = {{Rational(1), Rational(2)}, {Rational(1), Rational(1)}};

} // namespace

GermMap witness_germ(const std::string& tag, const LinearSpec& spec, long M) {
    VerdictB v = classify_linear(spec, M);
    if (v.outcome != Outcome::not_guaranteed || v.tag != tag)
        throw std::invalid_argument("witness parameters inconsistent with case " + tag +
                                    " (classified as " + v.describe() + ")");
    auto ctx = spec.context();
    const long m1 = spec.order1(), m2 = spec.order2();

    if (tag == "b1p") {
        const int D = witness_degree(M, static_cast<int>(M) + 1);
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, spec.lambda1());
        c1.set_coeff(0, static_cast<int>(M) + 1, CycloNum::one(ctx));
        c2.set_coeff(1, 0, CycloNum::one(ctx));
        c2.set_coeff(0, 1, spec.lambda1());
        return GermMap(std::move(c1), std::move(c2));
    }
    if (tag == "b2p") {
        const auto [alpha, beta] = *v.alpha_beta;
        const int D = witness_degree(M, static_cast<int>(std::max(alpha, beta)));
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, spec.lambda1());
        c1.set_coeff(0, static_cast<int>(beta), CycloNum::one(ctx));
        c2.set_coeff(0, 1, spec.lambda2());
        c2.set_coeff(static_cast<int>(alpha), 0, CycloNum::one(ctx));
        return GermMap(std::move(c1), std::move(c2));
    }
    if (tag == "b3p") {
        const long small = std::min(m1, m2);
        const long d = *v.ratio;
        const int D = witness_degree(M, static_cast<int>(std::max(small + 1, d)));
        Jet2 c1(ctx, D), c2(ctx, D);
        CycloNum lsmall = (m1 <= m2) ? spec.lambda1() : spec.lambda2();
        CycloNum lbig = (m1 <= m2) ? spec.lambda2() : spec.lambda1();
        c1.set_coeff(1, 0, lsmall);
        c1.set_coeff(static_cast<int>(small) + 1, 0, CycloNum::one(ctx));
        c1.set_coeff(0, static_cast<int>(d), CycloNum::one(ctx));
        c2.set_coeff(0, 1, lbig);
        c2.set_coeff(static_cast<int>(small), 1, CycloNum::one(ctx));
        GermMap g(std::move(c1), std::move(c2));
        return (m1 <= m2) ? g : swap_coordinates(g);
    }
    if (tag == "b4p") {
        const long small = std::min(m1, m2), big = std::max(m1, m2);
        const int D = witness_degree(M, static_cast<int>(big) + 1);
        CycloNum lsmall = (m1 <= m2) ? spec.lambda1() : spec.lambda2();
        CycloNum lbig = (m1 <= m2) ? spec.lambda2() : spec.lambda1();
        GermMap g = c8_germ(ctx, lsmall, lbig, small, big, kDefaultC8, D);
        return (m1 <= m2) ? g : swap_coordinates(g);
    }
    if (tag == "b0p") {
        const int D = witness_degree(M, static_cast<int>(M) + 1);
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, spec.lambda1());
        c2.set_coeff(0, 1, spec.lambda2());
        if (m1 == M)
            c1.set_coeff(static_cast<int>(M) + 1, 0, CycloNum::one(ctx));
        else
            c2.set_coeff(0, static_cast<int>(M) + 1, CycloNum::one(ctx));
        return GermMap(std::move(c1), std::move(c2));
    }
    throw std::invalid_argument("unknown counterexample tag: " + tag);
}

GermMap positive_witness(const std::string& tag, const LinearSpec& spec, long M) {
    VerdictB v = classify_linear(spec, M);
    if (v.outcome != Outcome::guaranteed || v.tag != tag)
        throw std::invalid_argument("witness parameters inconsistent with case " + tag +
                                    " (classified as " + v.describe() + ")");
    auto ctx = spec.context();
    const long m1 = spec.order1(), m2 = spec.order2();

    if (tag == "b2") {
        const auto [alpha, beta] = *v.alpha_beta;
        const int D = witness_degree(M, static_cast<int>(std::max(alpha, beta)));
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, spec.lambda1());
        c1.set_coeff(0, static_cast<int>(beta), CycloNum::one(ctx));
        c2.set_coeff(0, 1, spec.lambda2());
        c2.set_coeff(static_cast<int>(alpha), 0, CycloNum::one(ctx));
        return GermMap(std::move(c1), std::move(c2));
    }
    // b1, b3, b4: diagonal resonant monomial perturbations.
    const int D = witness_degree(M, static_cast<int>(std::max(m1, m2)) + 1);
    Jet2 c1(ctx, D), c2(ctx, D);
    c1.set_coeff(1, 0, spec.lambda1());
    c1.set_coeff(static_cast<int>(m1) + 1, 0, CycloNum::one(ctx));
    c2.set_coeff(0, 1, spec.lambda2());
    c2.set_coeff(0, static_cast<int>(m2) + 1, CycloNum::one(ctx));
    return GermMap(std::move(c1), std::move(c2));
}

GermMap witness_c8(long m1, long m2, const Rational a[2][2]) {
    if (m1 < 1 || m2 < 1 || std::gcd(m1, m2) != 1)
        throw std::invalid_argument("c8 requires coprime positive orders");
    if (a[0][0] == 0 || a[1][1] == 0)
        throw std::invalid_argument("c8 requires a11 != 0 and a22 != 0");
    if (a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0)
        throw std::invalid_argument("c8 requires det(a) != 0");
    const long L = m1 * m2;
    auto ctx = CycloContext::get(L);
    CycloNum l1 = CycloNum::zeta_pow(ctx, m2); // primitive m1-th root
    CycloNum l2 = CycloNum::zeta_pow(ctx, m1); // primitive m2-th root
    const int D = witness_degree(L, static_cast<int>(std::max(m1, m2)) + 1);
    return c8_germ(ctx, l1, l2, m1, m2, a, D);
}

GermMap builtin_example(const std::string& name, long k) {
    if (name == "e2") {
        if (k <= 1) throw std::invalid_argument("example e2 requires k > 1");
        auto ctx = CycloContext::get(6);
        const int D = witness_degree(6, static_cast<int>(3 * k) + 1);
        Jet2 c1(ctx, D), c2(ctx, D);
        c1.set_coeff(1, 0, CycloNum(ctx, Rational(-1)));
        c1.set_coeff(static_cast<int>(2 * k) + 1, 0, CycloNum::one(ctx));
        c1.set_coeff(1, 3, CycloNum::one(ctx));
        c2.set_coeff(0, 1, CycloNum::zeta_pow(ctx, 2)); // primitive cube root
        c2.set_coeff(2, 1, CycloNum::one(ctx));
        c2.set_coeff(0, static_cast<int>(3 * k) + 1, CycloNum::one(ctx));
        return GermMap(std::move(c1), std::move(c2));
    }
    if (name == "c8") return builtin_example_c8(2, 3, kDefaultC8);
    throw std::invalid_argument("unknown example name: " + name);
}

GermMap builtin_example_c8(long m1, long m2, const Rational a[2][2]) {
    return witness_c8(m1, m2, a);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t cell_stream(std::uint64_t seed, const LinearSpec& spec, long M) {
    std::uint64_t h = seed;
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.level));
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.k1) << 16);
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.k2) << 32);
    h = splitmix64(h ^ (spec.diagonalizable ? 1 : 2));
    h = splitmix64(h ^ static_cast<std::uint64_t>(M) << 8);
    return h;
}

Rational small_rational(std::mt19937_64& rng) {
    static const int nums[] = {-3, -2, -1, 1, 2, 3};
    long num = nums[rng() % 6];
    long den = 1 + static_cast<long>(rng() % 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Resonant slots (j, i1, i2) with 2 <= i1+i2 <= maxdeg for a diagonal spec.
std::vector<std::tuple<int, int, int>> resonant_slots(const LinearSpec& spec, int maxdeg) {
    std::vector<std::tuple<int, int, int>> slots;
    CycloNum l1 = spec.lambda1(), l2 = spec.lambda2();
    for (int j = 0; j < 2; ++j)
        for (int d = 2; d <= maxdeg; ++d)
            for (int i1 = 0; i1 <= d; ++i1)
                if (is_resonant(j, i1, d - i1, l1, l2)) slots.emplace_back(j, i1, d - i1);
    return slots;
}

// Budget for sampled germs: draws that cannot be certified inside it are
// rejected rather than chased into large matrices.
constexpr IndexBudget kSampleBudget{32, 20};

// A non-coprime lowest-form pair whose Cronin bound exceeds the sample budget
// cannot be certified cheaply; such draws are discarded before any dual-space
// work starts.
bool affordable(const GermMap& g, long M) {
    const int D = std::max(initial_truncation(M), g.max_term_degree());
    GermMap gd = g.with_degree(D);
    GermMap id = GermMap::identity(gd.context(), D);
    GermMap fm = gd;
    for (long m = 1; m <= M; ++m) {
        if (m > 1) fm = compose(gd, fm);
        if (M % m != 0) continue;
        try {
            HomogForms h = lowest_forms(id - fm);
            if (!forms_coprime(h) &&
                static_cast<long>(h.deg1) * h.deg2 > kSampleBudget.max_dual_degree)
                return false;
        } catch (const NonIsolatedError&) {
            return false;
        }
    }
    return true;
}

GermMap add_resonant_noise(const GermMap& base, const LinearSpec& spec, long M,
                           std::mt19937_64& rng) {
    auto slots = resonant_slots(spec, static_cast<int>(M) + 1);
    GermMap g = base;
    if (slots.empty()) return g;
    const int extra = static_cast<int>(rng() % 4);
    for (int i = 0; i < extra; ++i) {
        auto [j, i1, i2] = slots[rng() % slots.size()];
        g.component(j).add_term(i1, i2, CycloNum(g.context(), small_rational(rng)));
    }
    return g;
}

// Base germ with the spec's linear part and isolated iterates: diagonal
// resonant monomials for diagonalizable specs, the Jordan counterexample
// shape otherwise.
GermMap sample_base(const LinearSpec& spec, long M) {
    auto ctx = spec.context();
    const long m1 = spec.order1(), m2 = spec.order2();
    const int D = witness_degree(M, static_cast<int>(std::max({m1 + 1, m2 + 1, M + 1})));
    Jet2 c1(ctx, D), c2(ctx, D);
    if (spec.diagonalizable) {
        c1.set_coeff(1, 0, spec.lambda1());
        c1.set_coeff(static_cast<int>(m1) + 1, 0, CycloNum::one(ctx));
        c2.set_coeff(0, 1, spec.lambda2());
        c2.set_coeff(0, static_cast<int>(m2) + 1, CycloNum::one(ctx));
    } else {
        c1.set_coeff(1, 0, spec.lambda1());
        c1.set_coeff(0, static_cast<int>(m1) + 1, CycloNum::one(ctx));
        c2.set_coeff(1, 0, CycloNum::one(ctx));
        c2.set_coeff(0, 1, spec.lambda1());
    }
    return GermMap(std::move(c1), std::move(c2));
}

struct SampleChecker {
    const LinearSpec& spec;
    long M;
    std::mt19937_64 rng;
    long* counter;

    // Draws until a germ passes the affordability screen, then runs `check`;
    // NonIsolatedError rejects the draw, any other failure propagates.
    template <typename Check>
    void run(const GermMap& base, int samples, bool jordan_noise, Check check) {
        for (int s = 0; s < samples; ++s) {
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 32)
                    throw std::runtime_error("no isolated sample found in 32 draws");
                GermMap g = jordan_noise ? perturb_jordan(base) : add_resonant_noise(base, spec, M, rng);
                if (!affordable(g, M)) continue;
                try {
                    check(g);
                    ++*counter;
                    break;
                } catch (const NonIsolatedError&) {
                    continue;
                }
            }
        }
    }

    GermMap perturb_jordan(const GermMap& base) {
        GermMap g = base;
        // coefficient jitter on the nonlinear slot keeps DF(0) intact
        g.component(0).set_coeff(0, static_cast<int>(spec.order1()) + 1,
                                 CycloNum(g.context(), small_rational(rng)));
        return g;
    }
};

CellResult evaluate_cell(const LinearSpec& spec, long M, const ScanOptions& options) {
    CellResult cell{spec, M, classify_linear(spec, M), false, "", 0};
    std::mt19937_64 rng(cell_stream(options.seed, spec, M));
    long checked = 0;
    std::ostringstream detail;
    try {
        switch (cell.verdict.outcome) {
            case Outcome::guaranteed: {
                GermMap w = positive_witness(cell.verdict.tag, spec, M);
                long o = orbit_count(w, M);
                ++checked;
                if (o < 2) throw std::runtime_error("witness orbit count " + std::to_string(o) +
                                                    " below the guaranteed bound");
                detail << "witness O_" << M << "=" << o;
                SampleChecker checker{spec, M, rng, &checked};
                checker.run(w, options.samples, false, [&](const GermMap& g) {
                    DoldEngine engine(g, M, {}, kSampleBudget);
                    long os = engine.orbit_count(M);
                    if (os < 2)
                        throw std::runtime_error("sample orbit count " + std::to_string(os) +
                                                 " below the guaranteed bound");
                });
                break;
            }
            case Outcome::not_guaranteed: {
                GermMap w = witness_germ(cell.verdict.tag, spec, M);
                long o = orbit_count(w, M);
                ++checked;
                if (o != 1)
                    throw std::runtime_error("counterexample witness has O_" + std::to_string(M) +
                                             " = " + std::to_string(o) + ", expected 1");
                detail << "witness O_" << M << "=1";
                break;
            }
            case Outcome::no_period_M: {
                GermMap base = sample_base(spec, M);
                SampleChecker checker{spec, M, rng, &checked};
                checker.run(base, options.samples, !spec.diagonalizable, [&](const GermMap& g) {
                    DoldEngine engine(g, M, {}, kSampleBudget);
                    long p = engine.dold_index(M);
                    if (p != 0)
                        throw std::runtime_error("P_" + std::to_string(M) + " = " +
                                                 std::to_string(p) + " for a linear part without period");
                });
                detail << "P_" << M << "=0 on " << checked << " samples";
                break;
            }
        }
        cell.pass = true;
    } catch (const std::exception& e) {
        cell.pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << e.what();
    }
    cell.detail = detail.str();
    cell.checked = checked;
    return cell;
}

} // namespace

ScanReport verify_theorem(const ScanOptions& options) {
    if (options.max_lcm < 2) throw std::invalid_argument("max_lcm must be at least 2");

    std::vector<std::pair<LinearSpec, long>> cells;
    for (long m1 = 1; m1 <= options.max_lcm; ++m1) {
        for (long m2 = m1; m2 <= options.max_lcm; ++m2) {
            const long L = std::lcm(m1, m2);
            if (L > options.max_lcm) continue;
            for (long k1 = 1; k1 <= m1; ++k1) {
                if (std::gcd(k1, m1) != 1) continue;
                for (long k2 = 1; k2 <= m2; ++k2) {
                    if (std::gcd(k2, m2) != 1) continue;
                    const long e1 = (k1 % m1) * (L / m1);
                    const long e2 = (k2 % m2) * (L / m2);
                    std::vector<LinearSpec> specs;
                    specs.emplace_back(L, e1, e2, true);
                    if (e1 == e2) specs.emplace_back(L, e1, e2, false);
                    for (const auto& spec : specs)
                        for (long M = 2; M <= options.max_lcm; ++M) cells.emplace_back(spec, M);
                }
            }
        }
    }

    ScanReport report;
    report.cells.resize(cells.size(), CellResult{LinearSpec(1, 0, 0), 0, VerdictB{}, false, "", 0});

    const int nthreads = std::max(1, options.threads);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            report.cells[i] = evaluate_cell(cells[i].first, cells[i].second, options);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& cell : report.cells) {
        report.checked_germs += cell.checked;
        if (!cell.pass) report.all_pass = false;
    }
    return report;
}

std::string format_scan_report(const ScanReport& report, bool verbose) {
    std::ostringstream out;
    size_t failures = 0;
    for (const auto& cell : report.cells) {
        if (!cell.pass) ++failures;
        if (verbose || !cell.pass) {
            out << (cell.pass ? "PASS " : "FAIL ") << cell.spec.str() << " M=" << cell.M << " -> "
                << cell.verdict.describe();
            if (!cell.detail.empty()) out << " [" << cell.detail << "]";
            out << "\n";
        }
    }
    out << (report.all_pass ? "all cells PASS" : std::to_string(failures) + " cells FAIL") << " ("
        << report.cells.size() << " cells, " << report.checked_germs << " germs checked)\n";
    return out.str();
}

} // namespace periorb
