#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "periorb/jet.hpp"

namespace periorb {

using Complex = std::complex<double>;
using CPoint = std::array<Complex, 2>;

/// Polynomial plane map with complex double coefficients and zero constant
/// term: the floating-point shadow of a GermMap.
class FloatGerm {
  public:
    FloatGerm() = default;

    void set_coeff(int j, int i1, int i2, Complex c);
    int degree() const { return degree_; }

    CPoint eval(const CPoint& x) const;
    /// Jacobian entries d component_j / d x_i at x.
    std::array<std::array<Complex, 2>, 2> jacobian(const CPoint& x) const;

    FloatGerm& operator+=(const FloatGerm& rhs);

  private:
    std::map<std::pair<int, int>, Complex> terms_[2];
    int degree_ = 0;
};

struct NumericConfig {
    double epsilon = 1e-3;     // perturbation size
    double radius = 0.35;      // search ball
    int starts = 2000;         // quasi-random Newton starts
    double residual_tol = 1e-10;
    double cluster_tol = 1e-6;
    int max_newton_steps = 60;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EmbeddedGerm {
    FloatGerm germ;
    double embedding_error_bound = 0.0;
};

/// Principal embedding zeta_L -> exp(2 pi i / L); the error bound sums
/// coefficient magnitudes times machine epsilon.
EmbeddedGerm embed(const GermMap& f);

struct OrbitEval {
    std::vector<CPoint> points; // x, g(x), ..., g^M(x)
    std::array<std::array<Complex, 2>, 2> jacobian; // of g^M at x
    bool diverged = false;
};

OrbitEval orbit_eval(const FloatGerm& g, const CPoint& x, long M);

struct PeriodicPoint {
    CPoint location;
    long minimal_period = 0;
    double residual = 0.0;
    bool certified = false; // Jacobian of g^M - id nonsingular
};

/// Multi-start Newton on g^M(x) - x inside |x| < radius, deduplicated by
/// cluster_tol, minimal periods assigned over the divisors of M.
std::vector<PeriodicPoint> find_period_points(const FloatGerm& g, long M, const NumericConfig& cfg);

struct NumericCount {
    long orbits = -1;            // agreed count, -1 when decades disagree
    long count_at_decade[2] = {-1, -1};
    bool agreed = false;
    bool all_certified = true;
    double max_residual = 0.0;
    double embedding_error_bound = 0.0;
};

/// The perturbation route to the orbit count: push f off itself by random
/// degree <= 2 terms vanishing at 0, scaled by epsilon, count minimal-period-M
/// orbits among the certified Newton finds, and accept only when two epsilon
/// decades agree.
NumericCount numeric_orbit_count(const GermMap& f, long M, const NumericConfig& cfg);

} // namespace periorb
