#include "periorb/multiplicity.hpp"

#include <algorithm>

#include "periorb/linalg.hpp"

namespace periorb {

HomogForms lowest_forms(const GermMap& g) {
    int d1 = g.component(0).lowest_degree();
    int d2 = g.component(1).lowest_degree();
    if (d1 < 0 || d2 < 0)
        throw NonIsolatedError("a component vanishes identically up to the truncation degree");
    return HomogForms{g.component(0).homogeneous_part(d1), g.component(1).homogeneous_part(d2),
                      d1, d2};
}

namespace {

// Dehomogenization at x2 = 1: coefficient list in t = x1, constant first.
std::vector<CycloNum> dehomogenize(const Jet2& form, int deg) {
    const auto& ctx = form.context();
    std::vector<CycloNum> p(static_cast<size_t>(deg) + 1, CycloNum::zero(ctx));
    for (const auto& [e, c] : form.terms()) p[static_cast<size_t>(e.first)] = c;
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

bool sylvester_resultant_is_zero(const std::vector<CycloNum>& p, const std::vector<CycloNum>& q,
                                 const CycloContextPtr& ctx) {
    const size_t dp = p.size() - 1, dq = q.size() - 1;
    if (dp == 0 || dq == 0) return false; // a nonzero constant shares no root
    CycloMatrix s(ctx, dp + dq, dp + dq);
    for (size_t r = 0; r < dq; ++r)
        for (size_t j = 0; j < p.size(); ++j) s.at(r, r + j) = p[p.size() - 1 - j];
    for (size_t r = 0; r < dp; ++r)
        for (size_t j = 0; j < q.size(); ++j) s.at(dq + r, r + j) = q[q.size() - 1 - j];
    return determinant_is_zero(s);
}

} // namespace

bool forms_coprime(const HomogForms& h) {
    const auto& ctx = h.form1.context();
    // Shared root at (1:0) iff both pure-x1 coefficients vanish.
    bool pure1 = h.form1.coeff(h.deg1, 0).is_zero();
    bool pure2 = h.form2.coeff(h.deg2, 0).is_zero();
    if (pure1 && pure2) return false;
    // Shared root (t:1) iff the resultant of the dehomogenizations vanishes.
    auto p = dehomogenize(h.form1, h.deg1);
    auto q = dehomogenize(h.form2, h.deg2);
    if (p.empty() || q.empty())
        return false; // form is a pure x2 power times x1-free ... cannot happen for nonzero forms
    return !sylvester_resultant_is_zero(p, q, ctx);
}

std::optional<MultiplicityResult> cronin_zero_order(const GermMap& g) {
    HomogForms h = lowest_forms(g);
    if (!forms_coprime(h)) return std::nullopt;
    MultiplicityResult r;
    r.order = static_cast<long>(h.deg1) * h.deg2;
    r.method = MultMethod::cronin;
    r.stabilized_at = 0;
    r.trusted = true;
    return r;
}

MultiplicityResult dual_space_zero_order(const GermMap& g, int cap) {
    if (!g.component(0).coeff(0, 0).is_zero() || !g.component(1).coeff(0, 0).is_zero())
        throw std::invalid_argument("dual space requires g(0) = 0");
    const auto& ctx = g.context();
    cap = std::min({cap, g.degree(), kMaxDualDegree});

    // Functionals are indexed by monomial exponents |alpha| <= t in the
    // divided-power pairing, so one constraint row per multiplier monomial
    // x^beta and component i is the coefficient list of x^beta * g_i.
    auto cols_up_to = [](int t) { return static_cast<size_t>(t + 1) * (t + 2) / 2; };
    auto col_index = [](int a1, int a2) {
        int d = a1 + a2;
        return static_cast<size_t>(d) * (d + 1) / 2 + static_cast<size_t>(a2);
    };

    long prev_dim = 1; // order-0 functionals: evaluation at the origin
    for (int t = 1; t <= cap; ++t) {
        std::vector<std::vector<std::pair<size_t, CycloNum>>> rows;
        for (int i = 0; i < 2; ++i) {
            const Jet2& gi = g.component(i);
            int ord = gi.lowest_degree();
            if (ord < 0) throw NonIsolatedError("component vanishes identically");
            for (int b = 0; b + ord <= t; ++b) {
                for (int b1 = b; b1 >= 0; --b1) {
                    int b2 = b - b1;
                    std::vector<std::pair<size_t, CycloNum>> row;
                    for (const auto& [e, c] : gi.terms()) {
                        int a1 = e.first + b1, a2 = e.second + b2;
                        if (a1 + a2 > t) continue;
                        row.emplace_back(col_index(a1, a2), c);
                    }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
            }
        }
        CycloMatrix m(ctx, rows.size(), cols_up_to(t));
        for (size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : rows[r]) m.at(r, c) = v;
        long dim = static_cast<long>(kernel_dimension(std::move(m)));
        if (dim == prev_dim) {
            MultiplicityResult res;
            res.order = dim;
            res.method = MultMethod::dual_space;
            res.stabilized_at = t;
            res.trusted = (t + 1 <= g.degree());
            return res;
        }
        prev_dim = dim;
    }
    throw NonIsolatedError("dual-space dimensions did not stabilize up to degree " +
                               std::to_string(cap),
                           /*within_resolution=*/true);
}

MultiplicityResult zero_order(const GermMap& g) { return zero_order(g, g.degree()); }

MultiplicityResult zero_order(const GermMap& g, int dual_cap) {
    HomogForms h = lowest_forms(g);
    if (forms_coprime(h)) {
        MultiplicityResult r;
        r.order = static_cast<long>(h.deg1) * h.deg2;
        r.method = MultMethod::cronin;
        r.trusted = true;
        return r;
    }
    MultiplicityResult r = dual_space_zero_order(g, dual_cap);
    // Cronin's strict inequality when the lowest forms share a zero.
    if (r.order <= static_cast<long>(h.deg1) * h.deg2)
        throw std::logic_error("dual-space order violates the Cronin lower bound");
    return r;
}

int initial_truncation(long period) {
    return static_cast<int>(std::max<long>(16, 2 * period + 3));
}

IndexEngine::IndexEngine(GermMap f, long period_hint, EscalationLog log, IndexBudget budget)
    : f_(std::move(f)), degree_(initial_truncation(period_hint)), budget_(budget),
      log_(std::move(log)) {
    budget_.max_degree = std::min(budget_.max_degree, kMaxTruncation);
    budget_.max_dual_degree = std::min(budget_.max_dual_degree, kMaxDualDegree);
    degree_ = std::max(degree_, f_.max_term_degree());
    degree_ = std::min(degree_, budget_.max_degree);
    f_ = f_.with_degree(degree_);
}

const GermMap& IndexEngine::iterate_at_degree(long m) {
    while (static_cast<long>(iterates_.size()) < m) {
        if (iterates_.empty())
            iterates_.push_back(f_);
        else
            iterates_.push_back(compose(f_, iterates_.back()));
    }
    return iterates_[static_cast<size_t>(m - 1)];
}

void IndexEngine::escalate() {
    if (degree_ >= budget_.max_degree)
        throw NonIsolatedError("truncation cap reached without a certified multiplicity",
                               /*within_resolution=*/true);
    int next = std::min(degree_ * 2, budget_.max_degree);
    if (log_) log_(degree_, next);
    degree_ = next;
    f_ = f_.with_degree(degree_);
    iterates_.clear();
}

MultiplicityResult IndexEngine::index(long m) {
    if (m < 1) throw std::invalid_argument("iteration count must be positive");
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;

    for (;;) {
        const GermMap& fm = iterate_at_degree(m);
        GermMap displacement = GermMap::identity(f_.context(), degree_) - fm;
        try {
            MultiplicityResult r = zero_order(displacement, budget_.max_dual_degree);
            if (r.trusted) {
                cache_.emplace(m, r);
                return r;
            }
            // stabilized but uncertified: a larger truncation re-derives the
            // same coefficients plus the margin the certificate needs
        } catch (const NonIsolatedError& e) {
            // Once the truncation exceeds the dual-space ceiling, a larger
            // jet cannot change any coefficient the ladder looks at.
            if (degree_ > budget_.max_dual_degree || degree_ >= budget_.max_degree)
                throw NonIsolatedError(
                    "fixed point of iterate " + std::to_string(m) +
                        " not isolated within resolution (truncation " +
                        std::to_string(degree_) + ")",
                    e.within_resolution);
        }
        escalate();
    }
}

MultiplicityResult fixed_point_index(const GermMap& f, long m, EscalationLog log) {
    IndexEngine engine(f, m, std::move(log));
    return engine.index(m);
}

} // namespace periorb
