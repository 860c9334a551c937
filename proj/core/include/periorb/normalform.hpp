#pragma once

#include <vector>

#include "periorb/jet.hpp"

namespace periorb {

/// Resonance of the monomial x1^i1 x2^i2 in component j (0-based):
/// lambda_j = lambda_1^i1 * lambda_2^i2, decided exactly.
bool is_resonant(int j, int i1, int i2, const CycloNum& lambda1, const CycloNum& lambda2);

struct ResonanceRelation {
    int j;
    int i1, i2;
    bool holds;
};

struct NormalFormResult {
    GermMap transform;  // H, tangent to the identity
    GermMap normalized; // g = H^{-1} o f o H
    int degree;         // r: degrees 2..r of g carry only resonant terms
};

/// Degree-by-degree elimination of non-resonant terms for a germ with a
/// diagonal linear part with nonzero entries.  Every elimination divisor
/// lambda_1^i1 lambda_2^i2 - lambda_j is checked nonzero before use.
NormalFormResult poincare_dulac(const GermMap& f, int r);

/// Verifies that every nonzero coefficient of g^k in degrees 2..r satisfies
/// the resonance identity of its slot.
bool check_iterate_resonance(const GermMap& g, long k, int r);

/// Nonzero coefficients of g in degrees 2..r with their resonance flags.
std::vector<ResonanceRelation> resonant_support(const GermMap& g, int r);

} // namespace periorb
