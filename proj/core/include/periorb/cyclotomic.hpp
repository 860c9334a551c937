#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "periorb/rational.hpp"

namespace periorb {

/// Largest supported cyclotomic level; guards the Phi_L construction cost.
inline constexpr long kMaxCyclotomicLevel = 10000;

/// Coefficients of the L-th cyclotomic polynomial Phi_L, constant term first,
/// degree phi(L), monic.  Built by exact division of X^L - 1 by the Phi_d of
/// the proper divisors d of L.
std::vector<Integer> cyclotomic_poly(long level);

long euler_phi(long n);

/// The field Q(zeta_L).  Shared read-only between all values of one
/// computation; equality of contexts is equality of levels.
class CycloContext {
  public:
    static std::shared_ptr<const CycloContext> get(long level);

    long level() const { return level_; }
    long phi() const { return phi_; }
    const std::vector<Integer>& modulus() const { return modulus_; }

  private:
    explicit CycloContext(long level);

    long level_;
    long phi_;
    std::vector<Integer> modulus_; // Phi_L, constant term first
};

using CycloContextPtr = std::shared_ptr<const CycloContext>;

/// Element of Q(zeta_L) in the power basis reduced mod Phi_L.  The reduced
/// representative is unique, so equality and the zero test are coefficient
/// comparisons.
class CycloNum {
  public:
    CycloNum() = default;
    CycloNum(CycloContextPtr ctx, const Rational& constant);
    static CycloNum zero(CycloContextPtr ctx);
    static CycloNum one(CycloContextPtr ctx);
    static CycloNum zeta_pow(CycloContextPtr ctx, long exponent);
    static CycloNum from_coeffs(CycloContextPtr ctx, std::vector<Rational> coeffs);

    const CycloContextPtr& context() const { return ctx_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(long i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Valid only if is_rational().
    Rational rational_value() const;

    CycloNum operator-() const;
    CycloNum& operator+=(const CycloNum& rhs);
    CycloNum& operator-=(const CycloNum& rhs);
    CycloNum& operator*=(const CycloNum& rhs);
    CycloNum& operator/=(const CycloNum& rhs);
    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
    friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }

    CycloNum& scale(const Rational& q);
    CycloNum inverse() const;
    CycloNum pow(long e) const;

    bool operator==(const CycloNum& rhs) const;
    bool operator!=(const CycloNum& rhs) const { return !(*this == rhs); }

    /// Canonical coefficient string: terms in increasing zeta power, e.g.
    /// "1/2+z^6".  Inverse of parse_coeff.
    std::string str() const;
    static CycloNum parse(CycloContextPtr ctx, std::string_view text);

  private:
    void reduce(std::vector<Rational>& raw) const;

    CycloContextPtr ctx_;
    std::vector<Rational> coeffs_;
};

/// zeta_L^exponent together with its multiplicative order L/gcd(L, exponent).
struct RootOfUnity {
    CycloContextPtr ctx;
    long exponent = 0; // reduced mod L

    RootOfUnity(CycloContextPtr context, long k);
    long order() const;
    CycloNum value() const;
};

/// Least m >= 1 with u^m = 1, or nullopt when u^L != 1 (u is then not an
/// L-th root of unity; roots of other orders are reported as not-a-root).
std::optional<long> root_order(const CycloNum& u);

/// Least alpha >= 1 with l1^alpha = l2, or nullopt when no power reaches l2.
std::optional<long> power_relation(const RootOfUnity& l1, const RootOfUnity& l2);

void require_same_context(const CycloNum& a, const CycloNum& b);

} // namespace periorb
