#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "periorb/dold.hpp"

namespace periorb {

/// Spectral data of a 2x2 linear part: eigenvalues zeta_L^k1, zeta_L^k2.
/// A non-diagonalizable matrix forces k1 == k2.
struct LinearSpec {
    long level = 1;
    long k1 = 0, k2 = 0;
    bool diagonalizable = true;

    LinearSpec(long level_, long k1_, long k2_, bool diagonalizable_ = true);

    long order1() const; // multiplicative order of zeta^k1
    long order2() const;
    CycloContextPtr context() const { return CycloContext::get(level); }
    CycloNum lambda1() const { return CycloNum::zeta_pow(context(), k1); }
    CycloNum lambda2() const { return CycloNum::zeta_pow(context(), k2); }
    Matrix2 matrix(int degree = 0) const; // diagonal or lower-triangular Jordan
    std::string str() const;
};

enum class Outcome { guaranteed, not_guaranteed, no_period_M };

/// Classification verdict for (linear part, M).  Guaranteed outcomes carry
/// one of the positive tags b1..b4; not-guaranteed ones carry the tag of the
/// counterexample family, where b0p marks the spectral-gap family (exactly
/// one eigenvalue order equals M and the other does not divide M).
struct VerdictB {
    Outcome outcome = Outcome::no_period_M;
    std::string tag; // b1..b4, b1p..b4p, b0p, or empty for no_period_M
    std::optional<std::pair<long, long>> alpha_beta; // b2 / b2p certificate
    std::optional<long> ratio;                       // b3 / b3p: d = m2 / m1
    std::optional<std::pair<long, long>> gcd_max;    // b4 certificate
    std::string describe() const;
};

VerdictB classify_linear(const LinearSpec& spec, long M);

/// Counterexample germ of the given family, exactly the printed construction:
///   b1p: (l1 x1 + x2^(M+1), x1 + l1 x2)          [Jordan linear part]
///   b2p: (l1 x1 + x2^beta, l2 x2 + x1^alpha)      [alpha*beta = M + 1]
///   b3p: (l1 x1 + x1^(m1+1) + x2^d, l2 x2 + x1^m1 x2)   [d = M/m1]
///   b4p: the coupled germ of witness_c8 with a = (1 2; 1 1)
///   b0p: x^(M+1) attached to the order-M eigenvalue, the other axis linear
GermMap witness_germ(const std::string& tag, const LinearSpec& spec, long M);

/// Resonant germ realizing a positive case: diagonal monomial perturbations
/// (l1 x1 + x1^(m1+1), l2 x2 + x2^(m2+1)), or the coupled pair
/// (l1 x1 + x2^beta, l2 x2 + x1^alpha) for b2.
GermMap positive_witness(const std::string& tag, const LinearSpec& spec, long M);

/// x_i -> lambda_i x_i + x_i (a_i1 x1^m1 + a_i2 x2^m2) with m1, m2 coprime;
/// requires a11 != 0, a22 != 0, det(a) != 0.
GermMap witness_c8(long m1, long m2, const Rational a[2][2]);

/// Built-in example germs: "e2" (k > 1) and "c8".
GermMap builtin_example(const std::string& name, long k);
GermMap builtin_example_c8(long m1, long m2, const Rational a[2][2]);

struct ScanOptions {
    long max_lcm = 6;
    int samples = 3;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct CellResult {
    LinearSpec spec;
    long M;
    VerdictB verdict;
    bool pass = false;
    std::string detail;
    long checked = 0;
};

struct ScanReport {
    std::vector<CellResult> cells;
    bool all_pass = true;
    long checked_germs = 0;
};

/// Executable version of the main equivalence: for every spectral cell with
/// lcm of orders <= max_lcm and every M in 2..max_lcm,
///   guaranteed      -> O_M >= 2 on the positive witness and `samples`
///                      random resonant perturbations,
///   not_guaranteed  -> O_M == 1 on the counterexample witness,
///   no_period_M     -> P_M == 0 on `samples` germs with that linear part.
/// Deterministic for a fixed seed: per-cell RNG streams are derived from the
/// seed and the cell identity, independent of scheduling.
ScanReport verify_theorem(const ScanOptions& options);

std::string format_scan_report(const ScanReport& report, bool verbose);

} // namespace periorb
