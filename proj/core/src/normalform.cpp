#include "periorb/normalform.hpp"

namespace periorb {

bool is_resonant(int j, int i1, int i2, const CycloNum& lambda1, const CycloNum& lambda2) {
    if (j != 0 && j != 1) throw std::invalid_argument("component index must be 0 or 1");
    if (i1 + i2 < 2) throw std::invalid_argument("resonance is defined for degrees >= 2");
    const CycloNum& lj = (j == 0) ? lambda1 : lambda2;
    return lambda1.pow(i1) * lambda2.pow(i2) == lj;
}

NormalFormResult poincare_dulac(const GermMap& f, int r) {
    const auto& ctx = f.context();
    const int D = f.degree();
    if (r < 2 || r > D) throw std::invalid_argument("normal form degree must lie in [2, truncation]");

    Matrix2 lin = f.linear_part();
    if (!lin.is_diagonal()) throw std::invalid_argument("poincare_dulac requires a diagonal linear part");
    const CycloNum lambda1 = lin.a11, lambda2 = lin.a22;
    if (lambda1.is_zero() || lambda2.is_zero())
        throw std::invalid_argument("poincare_dulac requires nonzero eigenvalues");

    GermMap h = GermMap::identity(ctx, D);
    GermMap g = f;

    for (int s = 2; s <= r; ++s) {
        GermMap shear = GermMap::identity(ctx, D);
        bool any = false;
        for (int j = 0; j < 2; ++j) {
            for (const auto& [e, c] : g.component(j).terms()) {
                if (e.first + e.second != s) continue;
                if (is_resonant(j, e.first, e.second, lambda1, lambda2)) continue;
                CycloNum divisor =
                    lambda1.pow(e.first) * lambda2.pow(e.second) - (j == 0 ? lambda1 : lambda2);
                if (divisor.is_zero())
                    throw std::logic_error("vanishing small denominator on a non-resonant slot");
                shear.component(j).add_term(e.first, e.second, c / divisor);
                any = true;
            }
        }
        if (!any) continue;
        g = conjugate(g, shear);
        h = compose(h, shear);
        for (int j = 0; j < 2; ++j)
            for (const auto& [e, c] : g.component(j).terms())
                if (e.first + e.second <= s && e.first + e.second >= 2 &&
                    !is_resonant(j, e.first, e.second, lambda1, lambda2))
                    throw std::logic_error("elimination left a non-resonant term behind");
    }
    return NormalFormResult{std::move(h), std::move(g), r};
}

bool check_iterate_resonance(const GermMap& g, long k, int r) {
    Matrix2 lin = g.linear_part();
    if (!lin.is_diagonal()) throw std::invalid_argument("resonance check requires a diagonal linear part");
    GermMap gk = iterate(g, k);
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : gk.component(j).terms()) {
            int d = e.first + e.second;
            if (d < 2 || d > r) continue;
            if (!is_resonant(j, e.first, e.second, lin.a11, lin.a22)) return false;
        }
    return true;
}

std::vector<ResonanceRelation> resonant_support(const GermMap& g, int r) {
    Matrix2 lin = g.linear_part();
    if (!lin.is_diagonal()) throw std::invalid_argument("resonant support requires a diagonal linear part");
    std::vector<ResonanceRelation> out;
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : g.component(j).terms()) {
            int d = e.first + e.second;
            if (d < 2 || d > r) continue;
            out.push_back({j, e.first, e.second, is_resonant(j, e.first, e.second, lin.a11, lin.a22)});
        }
    return out;
}

} // namespace periorb
