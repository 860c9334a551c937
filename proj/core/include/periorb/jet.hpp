#pragma once

#include <map>
#include <utility>

#include "periorb/cyclotomic.hpp"

namespace periorb {

/// Maximum working truncation degree; escalation doubles up to this cap.
inline constexpr int kMaxTruncation = 128;

/// Truncated bivariate polynomial over Q(zeta_L).  Terms above the truncation
/// degree are discarded; stored coefficients are never zero.
class Jet2 {
  public:
    using Exponents = std::pair<int, int>;
    using TermMap = std::map<Exponents, CycloNum>;

    Jet2(CycloContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {
        if (degree_ < 1) throw std::invalid_argument("truncation degree must be positive");
    }

    const CycloContextPtr& context() const { return ctx_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CycloNum coeff(int i1, int i2) const;
    void set_coeff(int i1, int i2, const CycloNum& value);
    void add_term(int i1, int i2, const CycloNum& value);

    /// Re-truncates; raising the degree is valid for exact polynomial jets.
    Jet2 with_degree(int degree) const;

    Jet2 operator-() const;
    Jet2& operator+=(const Jet2& rhs);
    Jet2& operator-=(const Jet2& rhs);
    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator*(const Jet2& a, const Jet2& b);

    Jet2& scale(const CycloNum& c);

    /// Least total degree of a nonzero term, or -1 when the jet is zero.
    int lowest_degree() const;
    /// The homogeneous slice of total degree d.
    Jet2 homogeneous_part(int d) const;
    int max_term_degree() const;

    bool operator==(const Jet2& rhs) const;
    bool operator!=(const Jet2& rhs) const { return !(*this == rhs); }

  private:
    CycloContextPtr ctx_;
    int degree_;
    TermMap terms_;
};

/// 2x2 matrix over Q(zeta_L); the linear part of a germ.
struct Matrix2 {
    CycloNum a11, a12, a21, a22;

    CycloNum det() const { return a11 * a22 - a12 * a21; }
    bool is_diagonal() const { return a12.is_zero() && a21.is_zero(); }
    static Matrix2 identity(const CycloContextPtr& ctx);
    Matrix2 inverse() const;
};

/// Pair of jets with zero constant term: a polynomial map germ fixing 0.
class GermMap {
  public:
    GermMap(Jet2 c1, Jet2 c2);
    static GermMap zero(const CycloContextPtr& ctx, int degree);
    static GermMap identity(const CycloContextPtr& ctx, int degree);
    static GermMap linear(const Matrix2& m, int degree);

    const Jet2& component(int j) const { return j == 0 ? c1_ : c2_; }
    Jet2& component(int j) { return j == 0 ? c1_ : c2_; }
    const CycloContextPtr& context() const { return c1_.context(); }
    int degree() const { return c1_.degree(); }

    Matrix2 linear_part() const;
    GermMap with_degree(int degree) const;
    int max_term_degree() const;

    GermMap operator-() const;
    friend GermMap operator+(const GermMap& a, const GermMap& b);
    friend GermMap operator-(const GermMap& a, const GermMap& b);

    bool operator==(const GermMap& rhs) const { return c1_ == rhs.c1_ && c2_ == rhs.c2_; }
    bool operator!=(const GermMap& rhs) const { return !(*this == rhs); }

  private:
    Jet2 c1_, c2_;
};

/// outer(inner), exact in all terms of degree <= the shared truncation.
/// Coefficients below the truncation never depend on discarded terms because
/// both inputs vanish at the origin.
GermMap compose(const GermMap& outer, const GermMap& inner);
Jet2 compose(const Jet2& outer, const GermMap& inner);

/// f^m by left-fold chaining f(f^(m-1)).
GermMap iterate(const GermMap& f, long m);

/// Inverse germ of H, requires det DH(0) != 0; compose(H, invert(H)) is the
/// identity through the truncation degree.
GermMap invert(const GermMap& h);

/// H^{-1} o f o H.
GermMap conjugate(const GermMap& f, const GermMap& h);

/// Precomposition with (y1^a, y2^b).  The input is treated as an exact
/// polynomial; the result carries truncation max(a,b) * degree.
GermMap substitute_powers(const GermMap& g, int a, int b);
Jet2 substitute_powers(const Jet2& g, int a, int b);

} // namespace periorb
