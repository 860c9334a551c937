#include "periorb/jet.hpp"

#include <algorithm>

namespace periorb {

CycloNum Jet2::coeff(int i1, int i2) const {
    auto it = terms_.find({i1, i2});
    if (it == terms_.end()) return CycloNum::zero(ctx_);
    return it->second;
}

void Jet2::set_coeff(int i1, int i2, const CycloNum& value) {
    if (i1 < 0 || i2 < 0) throw std::invalid_argument("negative exponent");
    if (i1 + i2 > degree_) return;
    if (value.is_zero())
        terms_.erase({i1, i2});
    else
        terms_[{i1, i2}] = value;
}

void Jet2::add_term(int i1, int i2, const CycloNum& value) {
    if (i1 < 0 || i2 < 0) throw std::invalid_argument("negative exponent");
    if (i1 + i2 > degree_ || value.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Exponents{i1, i2}, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Jet2 Jet2::with_degree(int degree) const {
    Jet2 r(ctx_, degree);
    for (const auto& [e, c] : terms_)
        if (e.first + e.second <= degree) r.terms_.emplace(e, c);
    return r;
}

Jet2 Jet2::operator-() const {
    Jet2 r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

namespace {
void require_compatible(const Jet2& a, const Jet2& b) {
    if (a.context()->level() != b.context()->level())
        throw std::invalid_argument("jet context mismatch");
    if (a.degree() != b.degree())
        throw std::invalid_argument("jet truncation mismatch");
}
} // namespace

Jet2& Jet2::operator+=(const Jet2& rhs) {
    require_compatible(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e.first, e.second, c);
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) {
    require_compatible(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e.first, e.second, -c);
    return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    require_compatible(a, b);
    Jet2 r(a.context(), a.degree());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            int i1 = ea.first + eb.first, i2 = ea.second + eb.second;
            if (i1 + i2 > a.degree()) continue;
            r.add_term(i1, i2, ca * cb);
        }
    }
    return r;
}

Jet2& Jet2::scale(const CycloNum& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

int Jet2::lowest_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = e.first + e.second;
        if (best < 0 || d < best) best = d;
    }
    return best;
}

Jet2 Jet2::homogeneous_part(int d) const {
    Jet2 r(ctx_, degree_);
    for (const auto& [e, c] : terms_)
        if (e.first + e.second == d) r.terms_.emplace(e, c);
    return r;
}

int Jet2::max_term_degree() const {
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e.first + e.second);
    return best;
}

bool Jet2::operator==(const Jet2& rhs) const {
    if (ctx_->level() != rhs.ctx_->level() || degree_ != rhs.degree_) return false;
    if (terms_.size() != rhs.terms_.size()) return false;
    auto it = rhs.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (it->first != e || it->second != c) return false;
        ++it;
    }
    return true;
}

Matrix2 Matrix2::identity(const CycloContextPtr& ctx) {
    return Matrix2{CycloNum::one(ctx), CycloNum::zero(ctx), CycloNum::zero(ctx),
                   CycloNum::one(ctx)};
}

Matrix2 Matrix2::inverse() const {
    CycloNum d = det();
    if (d.is_zero()) throw std::domain_error("singular 2x2 matrix");
    CycloNum di = d.inverse();
    return Matrix2{a22 * di, -(a12 * di), -(a21 * di), a11 * di};
}

GermMap::GermMap(Jet2 c1, Jet2 c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
    require_compatible(c1_, c2_);
    if (!c1_.coeff(0, 0).is_zero() || !c2_.coeff(0, 0).is_zero())
        throw std::invalid_argument("germ map must fix the origin");
}

GermMap GermMap::zero(const CycloContextPtr& ctx, int degree) {
    return GermMap(Jet2(ctx, degree), Jet2(ctx, degree));
}

GermMap GermMap::identity(const CycloContextPtr& ctx, int degree) {
    Jet2 x1(ctx, degree), x2(ctx, degree);
    x1.set_coeff(1, 0, CycloNum::one(ctx));
    x2.set_coeff(0, 1, CycloNum::one(ctx));
    return GermMap(std::move(x1), std::move(x2));
}

GermMap GermMap::linear(const Matrix2& m, int degree) {
    const auto& ctx = m.a11.context();
    Jet2 c1(ctx, degree), c2(ctx, degree);
    c1.set_coeff(1, 0, m.a11);
    c1.set_coeff(0, 1, m.a12);
    c2.set_coeff(1, 0, m.a21);
    c2.set_coeff(0, 1, m.a22);
    return GermMap(std::move(c1), std::move(c2));
}

Matrix2 GermMap::linear_part() const {
    return Matrix2{c1_.coeff(1, 0), c1_.coeff(0, 1), c2_.coeff(1, 0), c2_.coeff(0, 1)};
}

GermMap GermMap::with_degree(int degree) const {
    return GermMap(c1_.with_degree(degree), c2_.with_degree(degree));
}

int GermMap::max_term_degree() const {
    return std::max(c1_.max_term_degree(), c2_.max_term_degree());
}

GermMap GermMap::operator-() const { return GermMap(-c1_, -c2_); }

GermMap operator+(const GermMap& a, const GermMap& b) {
    return GermMap(a.c1_ + b.c1_, a.c2_ + b.c2_);
}

GermMap operator-(const GermMap& a, const GermMap& b) {
    return GermMap(a.c1_ - b.c1_, a.c2_ - b.c2_);
}

Jet2 compose(const Jet2& outer, const GermMap& inner) {
    if (outer.context()->level() != inner.context()->level())
        throw std::invalid_argument("jet context mismatch");
    if (outer.degree() != inner.degree())
        throw std::invalid_argument("jet truncation mismatch");
    const int D = outer.degree();
    const auto& ctx = outer.context();

    // Group outer terms by the first exponent: sum_i P1^i * (sum_j c_ij P2^j).
    // Powers of the inner components are built by ladders; each has positive
    // lowest degree, so exponents above D contribute nothing.
    std::map<int, Jet2> by_i1;
    int max_i1 = 0, max_i2 = 0;
    for (const auto& [e, c] : outer.terms()) {
        max_i1 = std::max(max_i1, e.first);
        max_i2 = std::max(max_i2, e.second);
    }
    std::vector<Jet2> pow2;
    pow2.reserve(static_cast<size_t>(max_i2) + 1);
    {
        Jet2 one(ctx, D);
        one.set_coeff(0, 0, CycloNum::one(ctx));
        pow2.push_back(one);
        for (int j = 1; j <= max_i2; ++j) pow2.push_back(pow2.back() * inner.component(1));
    }
    for (const auto& [e, c] : outer.terms()) {
        auto [it, inserted] = by_i1.try_emplace(e.first, Jet2(ctx, D));
        Jet2 scaled = pow2[static_cast<size_t>(e.second)];
        scaled.scale(c);
        it->second += scaled;
    }

    Jet2 result(ctx, D);
    Jet2 p1(ctx, D);
    p1.set_coeff(0, 0, CycloNum::one(ctx));
    int cur = 0;
    for (auto& [i1, partial] : by_i1) {
        while (cur < i1) {
            p1 = p1 * inner.component(0);
            ++cur;
        }
        result += p1 * partial;
    }
    return result;
}

GermMap compose(const GermMap& outer, const GermMap& inner) {
    return GermMap(compose(outer.component(0), inner), compose(outer.component(1), inner));
}

GermMap iterate(const GermMap& f, long m) {
    if (m < 1) throw std::invalid_argument("iteration count must be positive");
    GermMap acc = f;
    for (long k = 2; k <= m; ++k) acc = compose(f, acc);
    return acc;
}

GermMap invert(const GermMap& h) {
    const auto& ctx = h.context();
    const int D = h.degree();
    Matrix2 lin = h.linear_part();
    Matrix2 lin_inv = lin.inverse(); // throws when DH(0) is singular

    GermMap linear_inv = GermMap::linear(lin_inv, D);
    GermMap tail = h - GermMap::linear(lin, D); // degree >= 2 terms of h
    if (tail.component(0).is_zero() && tail.component(1).is_zero()) return linear_inv;

    GermMap id = GermMap::identity(ctx, D);
    // K = Linv o (id - N o K) gains one exact degree per pass.
    GermMap k = linear_inv;
    for (int step = 2; step <= D; ++step) {
        GermMap next = compose(linear_inv, id - compose(tail, k));
        if (next == k) break;
        k = std::move(next);
    }
    return k;
}

GermMap conjugate(const GermMap& f, const GermMap& h) {
    return compose(invert(h), compose(f, h));
}

Jet2 substitute_powers(const Jet2& g, int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("power substitution exponents must be positive");
    long out_degree = static_cast<long>(std::max(a, b)) * g.degree();
    if (out_degree > 4096) throw std::length_error("power substitution exceeds truncation budget");
    Jet2 r(g.context(), static_cast<int>(out_degree));
    for (const auto& [e, c] : g.terms()) r.set_coeff(e.first * a, e.second * b, c);
    return r;
}

GermMap substitute_powers(const GermMap& g, int a, int b) {
    return GermMap(substitute_powers(g.component(0), a, b),
                   substitute_powers(g.component(1), a, b));
}

} // namespace periorb
