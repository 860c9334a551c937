#pragma once

#include <set>
#include <string>
#include <vector>

#include "periorb/multiplicity.hpp"

namespace periorb {

/// Raised when a computed index table contradicts a theorem-level identity
/// (divisibility of P_M by M, or the divisor-sum consistency check).  These
/// can only come from a software defect or an input that slipped past the
/// isolation checks, so they are never downgraded to warnings.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Periods of periodic points of the linear part: a subset of
/// {1, m1, m2, lcm(m1, m2)} where the m_i are eigenvalue orders.
struct PeriodSet {
    std::set<long> periods;
    bool contains(long m) const { return periods.count(m) > 0; }
};

/// All subsets tau of the primes dividing M as pairs (M:tau, (-1)^#tau).
std::vector<std::pair<long, int>> prime_subsets(long M);

/// Root-of-unity eigenvalues are located by scanning the candidates inside
/// the coefficient field; eigenvalues that are not roots of unity (or live
/// outside Q(zeta_L)) contribute no periods.
PeriodSet admissible_periods(const Matrix2& a);

struct DoldRow {
    long m = 0;
    long mu = 0;
    long P = 0;
    long O = 0;
};

struct DoldReport {
    long M = 0;
    long mu_M = 0;
    std::vector<DoldRow> rows; // admissible divisors of M, ascending
    bool consistent = false;
};

/// Dold indices of one germ with shared, memoized index computations.
class DoldEngine {
  public:
    DoldEngine(GermMap f, long period_hint, EscalationLog log = {}, IndexBudget budget = {});

    long mu(long m) { return engine_.mu(m); }
    /// P_M(f,0): alternating sum of mu over the prime-subset quotients.
    /// Checks P_M = 0 whenever M is not an admissible period.
    long dold_index(long M);
    /// O_M(f,0) = P_M / M; divisibility failures are hard errors.
    long orbit_count(long M);
    /// Full divisor table plus the divisor-sum identity check; throws
    /// ConsistencyError with the offending table when the identity fails.
    DoldReport report(long M);

    const PeriodSet& admissible() const { return admissible_; }

  private:
    IndexEngine engine_;
    PeriodSet admissible_;
};

long dold_index(const GermMap& f, long M);
long orbit_count(const GermMap& f, long M);
DoldReport index_consistency(const GermMap& f, long M);

std::string format_report(const DoldReport& report);

} // namespace periorb
