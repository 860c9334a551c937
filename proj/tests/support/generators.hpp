#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <periorb/classify.hpp>
#include <periorb/jet.hpp>
#include <periorb/multiplicity.hpp>

namespace testsupport {

using namespace periorb;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long pick(long lo, long hi) { // inclusive
        return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(int percent) { return pick(0, 99) < percent; }

    Rational small_rational(bool nonzero = true) {
        long num = pick(nonzero ? 1 : 0, 3) * (chance(50) ? 1 : -1);
        long den = pick(1, 3);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
};

CycloNum random_cyclo(Rng& rng, const CycloContextPtr& ctx, bool nonzero = false);

/// Random polynomial coordinate change: invertible linear part plus a few
/// higher terms, suitable for conjugation tests.
GermMap random_transform(Rng& rng, const CycloContextPtr& ctx, int degree);

/// Random germ with an isolated zero of small order at the origin, found by
/// rejection; the caller gets the germ together with its certified order.
struct IsolatedGerm {
    GermMap germ;
    long order;
};
IsolatedGerm random_isolated_zero_germ(Rng& rng, const CycloContextPtr& ctx, int degree);

/// Random resonant germ built over a random small spectral cell, with its
/// realizable target period.
struct ResonantDraw {
    LinearSpec spec;
    GermMap germ;
    long M;
};
ResonantDraw random_resonant_germ(Rng& rng);

/// Plain rational Gaussian elimination, an oracle for the fraction-free rank.
size_t naive_rank(std::vector<std::vector<CycloNum>> m, const CycloContextPtr& ctx);

} // namespace testsupport
