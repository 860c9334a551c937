#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "periorb/jet.hpp"

namespace periorb {

/// The origin is not an isolated zero / fixed point, or could not be
/// separated within the truncation cap.
struct NonIsolatedError : std::runtime_error {
    explicit NonIsolatedError(const std::string& what, bool within_resolution_ = false)
        : std::runtime_error(what), within_resolution(within_resolution_) {}
    /// True when dual-space dimensions were still growing at the maximum
    /// truncation; the zero may be isolated with multiplicity beyond reach.
    bool within_resolution;
};

/// Lowest nonzero homogeneous parts of the two components.
struct HomogForms {
    Jet2 form1, form2;
    int deg1 = 0, deg2 = 0;
};

enum class MultMethod { cronin, dual_space };

struct MultiplicityResult {
    long order = 0;
    MultMethod method = MultMethod::cronin;
    /// Degree at which the dual-space dimension stabilized (dual_space only).
    int stabilized_at = 0;
    /// Determinacy certificate: stabilized_at + 1 <= truncation degree.
    bool trusted = true;
};

/// Resolution ceiling for the dual-space degree ladder.  Multiplicities above
/// this are reported as "not isolated within resolution" rather than chased
/// into matrices that no longer fit the desk-scale budget.
inline constexpr int kMaxDualDegree = 40;

HomogForms lowest_forms(const GermMap& g);

/// True iff the only common zero of the two forms is the origin.  The line
/// x2 = 0 is checked through the pure-x1 coefficients, every other direction
/// through the Sylvester resultant of the dehomogenized forms.
bool forms_coprime(const HomogForms& h);

/// Cronin fast path: order m1*m2 when the lowest forms are coprime, nullopt
/// otherwise (the zero order is then strictly larger than m1*m2).
std::optional<MultiplicityResult> cronin_zero_order(const GermMap& g);

/// Macaulay dual-space zero order: dimensions of the annihilating functional
/// spaces stabilize at the multiplicity.  Throws NonIsolatedError when no
/// stabilization happens up to `cap`.
MultiplicityResult dual_space_zero_order(const GermMap& g, int cap);

/// Exact local zero order of g at the origin: Cronin when applicable, else
/// the dual-space computation, cross-checked against Cronin's lower bound.
MultiplicityResult zero_order(const GermMap& g);
MultiplicityResult zero_order(const GermMap& g, int dual_cap);

/// Truncation policy for index computations around period M.
int initial_truncation(long period);

using EscalationLog = std::function<void(int old_degree, int new_degree)>;

/// Work bounds for an index computation.  The defaults realize the full
/// engine; samplers pass shrunken budgets so hopeless draws are rejected
/// (as NonIsolatedError) instead of chased into large matrices.
struct IndexBudget {
    int max_degree = kMaxTruncation;    // truncation escalation ceiling
    int max_dual_degree = kMaxDualDegree; // dual-space ladder ceiling
};

/// Fixed point indices of the iterates of one germ with memoization and
/// automatic truncation escalation.  The germ is treated as an exact
/// polynomial, so raising the working degree is lossless.
class IndexEngine {
  public:
    IndexEngine(GermMap f, long period_hint, EscalationLog log = {}, IndexBudget budget = {});

    /// mu_{f^m}(0) = zero order of id - f^m; certified or an exception.
    MultiplicityResult index(long m);
    long mu(long m) { return index(m).order; }

    const GermMap& germ() const { return f_; }
    int working_degree() const { return degree_; }

  private:
    const GermMap& iterate_at_degree(long m);
    void escalate();

    GermMap f_;
    int degree_;
    IndexBudget budget_;
    std::map<long, MultiplicityResult> cache_;
    std::vector<GermMap> iterates_; // iterates_[k] = f^(k+1) at current degree
    EscalationLog log_;
};

/// One-shot mu_{f^m}(0).
MultiplicityResult fixed_point_index(const GermMap& f, long m, EscalationLog log = {});

} // namespace periorb
