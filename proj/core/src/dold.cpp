#include "periorb/dold.hpp"

#include <numeric>
#include <sstream>

namespace periorb {

std::vector<std::pair<long, int>> prime_subsets(long M) {
    if (M < 1) throw std::invalid_argument("period must be positive");
    std::vector<long> primes;
    long m = M;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) primes.push_back(m);

    std::vector<std::pair<long, int>> out;
    const size_t n = primes.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        long q = M;
        int sign = 1;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) {
                q /= primes[i];
                sign = -sign;
            }
        out.emplace_back(q, sign);
    }
    return out;
}

namespace {

// Multiplicative order of u, probing exponents up to lcm(2, L); nullopt when
// u is not a root of unity of such order.
std::optional<long> order_in_field(const CycloNum& u) {
    if (u.is_zero()) return std::nullopt;
    const long level = u.context()->level();
    const long bound = std::lcm<long>(2, level);
    CycloNum acc = u;
    for (long m = 1; m <= bound; ++m) {
        if (acc.is_one()) return m;
        acc *= u;
    }
    return std::nullopt;
}

} // namespace

PeriodSet admissible_periods(const Matrix2& a) {
    const auto& ctx = a.a11.context();
    const long level = ctx->level();

    // Characteristic polynomial X^2 - tr X + det, evaluated at every root of
    // unity of the field: +-zeta^k (the minus signs matter only for odd L).
    const CycloNum tr = a.a11 + a.a22;
    const CycloNum det = a.det();

    std::vector<long> orders;
    auto probe = [&](const CycloNum& u) {
        CycloNum val = u * u - tr * u + det;
        if (!val.is_zero()) return;
        if (auto ord = order_in_field(u)) orders.push_back(*ord);
    };
    for (long k = 0; k < level; ++k) {
        CycloNum u = CycloNum::zeta_pow(ctx, k);
        probe(u);
        if (level % 2 == 1) probe(-u);
    }

    // A double eigenvalue shows up once in the scan; its period still counts
    // only once, and the lcm of a value with itself adds nothing new.
    PeriodSet ps;
    ps.periods.insert(1);
    for (long o : orders)
        if (o > 1) ps.periods.insert(o);
    for (size_t i = 0; i < orders.size(); ++i)
        for (size_t j = i + 1; j < orders.size(); ++j)
            if (orders[i] > 1 && orders[j] > 1)
                ps.periods.insert(std::lcm(orders[i], orders[j]));
    return ps;
}

DoldEngine::DoldEngine(GermMap f, long period_hint, EscalationLog log, IndexBudget budget)
    : engine_(std::move(f), period_hint, std::move(log), budget),
      admissible_(admissible_periods(engine_.germ().linear_part())) {}

long DoldEngine::dold_index(long M) {
    long P = 0;
    for (const auto& [q, sign] : prime_subsets(M)) P += sign * engine_.mu(q);
    if (!admissible_.contains(M) && P != 0)
        throw ConsistencyError("P_" + std::to_string(M) +
                               " = " + std::to_string(P) +
                               " nonzero although the linear part has no period-" +
                               std::to_string(M) + " point");
    return P;
}

long DoldEngine::orbit_count(long M) {
    long P = dold_index(M);
    if (P % M != 0)
        throw ConsistencyError("P_" + std::to_string(M) + " = " + std::to_string(P) +
                               " is not divisible by " + std::to_string(M));
    long O = P / M;
    if (O < 0)
        throw ConsistencyError("negative orbit count O_" + std::to_string(M) + " = " +
                               std::to_string(O));
    return O;
}

DoldReport DoldEngine::report(long M) {
    DoldReport rep;
    rep.M = M;
    rep.mu_M = engine_.mu(M);

    long sum = 0;
    for (long m = 1; m <= M; ++m) {
        if (M % m != 0) continue;
        if (admissible_.contains(m)) {
            DoldRow row;
            row.m = m;
            row.mu = engine_.mu(m);
            row.P = dold_index(m);
            row.O = orbit_count(m);
            sum += row.P;
            rep.rows.push_back(row);
        } else {
            // vanishing off the admissible set; dold_index hard-errors if not
            (void)dold_index(m);
        }
    }
    rep.consistent = (sum == rep.mu_M);
    if (!rep.consistent)
        throw ConsistencyError("index table inconsistent:\n" + format_report(rep));
    return rep;
}

long dold_index(const GermMap& f, long M) {
    DoldEngine engine(f, M);
    return engine.dold_index(M);
}

long orbit_count(const GermMap& f, long M) {
    DoldEngine engine(f, M);
    return engine.orbit_count(M);
}

DoldReport index_consistency(const GermMap& f, long M) {
    DoldEngine engine(f, M);
    return engine.report(M);
}

std::string format_report(const DoldReport& report) {
    std::ostringstream out;
    out << "  m   mu(f^m)     P_m     O_m\n";
    for (const auto& row : report.rows) {
        out.width(3);
        out << row.m;
        out.width(10);
        out << row.mu;
        out.width(8);
        out << row.P;
        out.width(8);
        out << row.O;
        out << "\n";
    }
    out << "mu(f^" << report.M << ") = " << report.mu_M << ", sum of P_m = "
        << (report.consistent ? "consistent" : "INCONSISTENT") << "\n";
    return out.str();
}

} // namespace periorb
