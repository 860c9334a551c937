#include "periorb/numverify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace periorb {

void FloatGerm::set_coeff(int j, int i1, int i2, Complex c) {
    if (i1 < 0 || i2 < 0 || (i1 == 0 && i2 == 0))
        throw std::invalid_argument("float germ terms must vanish at the origin");
    if (c == Complex(0.0, 0.0))
        terms_[j].erase({i1, i2});
    else
        terms_[j][{i1, i2}] = c;
    degree_ = std::max(degree_, i1 + i2);
}

namespace {

void power_table(std::vector<Complex>& table, Complex x, int up_to) {
    table.assign(static_cast<size_t>(up_to) + 1, Complex(1.0, 0.0));
    for (int i = 1; i <= up_to; ++i) table[static_cast<size_t>(i)] = table[i - 1] * x;
}

} // namespace

CPoint FloatGerm::eval(const CPoint& x) const {
    std::vector<Complex> p1, p2;
    power_table(p1, x[0], degree_);
    power_table(p2, x[1], degree_);
    CPoint out{Complex(0.0), Complex(0.0)};
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : terms_[j])
            out[j] += c * p1[static_cast<size_t>(e.first)] * p2[static_cast<size_t>(e.second)];
    return out;
}

std::array<std::array<Complex, 2>, 2> FloatGerm::jacobian(const CPoint& x) const {
    std::vector<Complex> p1, p2;
    power_table(p1, x[0], degree_);
    power_table(p2, x[1], degree_);
    std::array<std::array<Complex, 2>, 2> jac{{{Complex(0.0), Complex(0.0)},
                                               {Complex(0.0), Complex(0.0)}}};
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : terms_[j]) {
            if (e.first > 0)
                jac[j][0] += c * double(e.first) * p1[e.first - 1] * p2[e.second];
            if (e.second > 0)
                jac[j][1] += c * double(e.second) * p1[e.first] * p2[e.second - 1];
        }
    return jac;
}

FloatGerm& FloatGerm::operator+=(const FloatGerm& rhs) {
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : rhs.terms_[j]) {
            auto& slot = terms_[j][e];
            slot += c;
            if (slot == Complex(0.0)) terms_[j].erase(e);
        }
    degree_ = std::max(degree_, rhs.degree_);
    return *this;
}

void NumericConfig::validate() const {
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (!(residual_tol > 0 && residual_tol < cluster_tol && cluster_tol < radius))
        throw std::invalid_argument("need 0 < residual_tol < cluster_tol < radius");
    if (starts < 1) throw std::invalid_argument("need at least one start");
}

EmbeddedGerm embed(const GermMap& f) {
    const long L = f.context()->level();
    const double tau = 2.0 * M_PI / static_cast<double>(L);
    std::vector<Complex> zeta_pows(static_cast<size_t>(L));
    for (long k = 0; k < L; ++k)
        zeta_pows[static_cast<size_t>(k)] = std::polar(1.0, tau * static_cast<double>(k));

    EmbeddedGerm out;
    const long phi = f.context()->phi();
    for (int j = 0; j < 2; ++j)
        for (const auto& [e, c] : f.component(j).terms()) {
            Complex value(0.0);
            double magsum = 0.0;
            for (long i = 0; i < phi; ++i) {
                const Rational& q = c.coeff(i);
                if (q == 0) continue;
                double d = q.get_d();
                value += d * zeta_pows[static_cast<size_t>(i % L)];
                magsum += std::abs(d);
            }
            if (value != Complex(0.0)) out.germ.set_coeff(j, e.first, e.second, value);
            out.embedding_error_bound +=
                magsum * static_cast<double>(phi + 1) * std::numeric_limits<double>::epsilon();
        }
    return out;
}

OrbitEval orbit_eval(const FloatGerm& g, const CPoint& x, long M) {
    OrbitEval out;
    out.jacobian = {{{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(1.0)}}};
    out.points.push_back(x);
    CPoint cur = x;
    for (long k = 0; k < M; ++k) {
        auto jac = g.jacobian(cur);
        // chain rule: J <- Dg(cur) * J
        std::array<std::array<Complex, 2>, 2> next_jac;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                next_jac[r][c] = jac[r][0] * out.jacobian[0][c] + jac[r][1] * out.jacobian[1][c];
        out.jacobian = next_jac;
        cur = g.eval(cur);
        out.points.push_back(cur);
        if (!(std::abs(cur[0]) < 1e6 && std::abs(cur[1]) < 1e6) ||
            !std::isfinite(cur[0].real()) || !std::isfinite(cur[1].real())) {
            out.diverged = true;
            return out;
        }
    }
    return out;
}

namespace {

double norm2(const CPoint& a, const CPoint& b) {
    return std::sqrt(std::norm(a[0] - b[0]) + std::norm(a[1] - b[1]));
}

double norm2(const CPoint& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

// Halton sequence with a seeded rotation; bases 2, 3, 5, 7.
struct HaltonBall {
    double rot[4];
    double radius;
    long index = 0;

    HaltonBall(std::uint64_t seed, double radius_) : radius(radius_) {
        std::mt19937_64 rng(seed ^ 0x51ab5ca1e5ULL);
        for (double& r : rot) r = (rng() >> 11) * (1.0 / 9007199254740992.0);
    }

    static double radical_inverse(long n, int base) {
        double inv = 1.0 / base, result = 0.0, f = inv;
        while (n > 0) {
            result += f * (n % base);
            n /= base;
            f *= inv;
        }
        return result;
    }

    CPoint next() {
        static const int bases[4] = {2, 3, 5, 7};
        for (;;) {
            ++index;
            double u[4];
            for (int d = 0; d < 4; ++d) {
                u[d] = radical_inverse(index, bases[d]) + rot[d];
                u[d] -= std::floor(u[d]);
            }
            CPoint p{Complex(radius * (2 * u[0] - 1), radius * (2 * u[1] - 1)),
                     Complex(radius * (2 * u[2] - 1), radius * (2 * u[3] - 1))};
            if (norm2(p) <= radius) return p;
        }
    }
};

// Solves the 2x2 complex system A d = r by Cramer; false when near-singular.
bool solve2(const std::array<std::array<Complex, 2>, 2>& a, const CPoint& r, CPoint& d) {
    Complex det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (std::abs(det) < 1e-14) return false;
    d[0] = (r[0] * a[1][1] - r[1] * a[0][1]) / det;
    d[1] = (a[0][0] * r[1] - a[1][0] * r[0]) / det;
    return true;
}

} // namespace

std::vector<PeriodicPoint> find_period_points(const FloatGerm& g, long M,
                                              const NumericConfig& cfg) {
    cfg.validate();
    std::vector<CPoint> converged;

    HaltonBall starts(cfg.seed, cfg.radius);
    for (int s = 0; s < cfg.starts; ++s) {
        CPoint x = starts.next();
        bool ok = false;
        for (int step = 0; step < cfg.max_newton_steps; ++step) {
            OrbitEval oe = orbit_eval(g, x, M);
            if (oe.diverged) break;
            CPoint fx{oe.points.back()[0] - x[0], oe.points.back()[1] - x[1]};
            double res = norm2(fx);
            if (res < cfg.residual_tol) {
                ok = true;
                break;
            }
            auto a = oe.jacobian;
            a[0][0] -= 1.0;
            a[1][1] -= 1.0;
            CPoint d;
            if (!solve2(a, fx, d)) break;
            x[0] -= d[0];
            x[1] -= d[1];
            if (norm2(x) > 4 * cfg.radius) break;
        }
        if (ok && norm2(x) < cfg.radius) converged.push_back(x);
    }

    // Deterministic clustering: sort, then sweep.
    std::sort(converged.begin(), converged.end(), [](const CPoint& a, const CPoint& b) {
        auto key = [](const CPoint& p) {
            return std::array<double, 4>{p[0].real(), p[0].imag(), p[1].real(), p[1].imag()};
        };
        return key(a) < key(b);
    });
    std::vector<CPoint> unique_pts;
    for (const auto& p : converged) {
        bool dup = false;
        for (const auto& q : unique_pts)
            if (norm2(p, q) < cfg.cluster_tol) {
                dup = true;
                break;
            }
        if (!dup) unique_pts.push_back(p);
    }

    std::vector<PeriodicPoint> out;
    for (const auto& p : unique_pts) {
        PeriodicPoint pp;
        pp.location = p;
        OrbitEval oe = orbit_eval(g, p, M);
        pp.residual = norm2(CPoint{oe.points.back()[0] - p[0], oe.points.back()[1] - p[1]});
        auto a = oe.jacobian;
        a[0][0] -= 1.0;
        a[1][1] -= 1.0;
        Complex det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        pp.certified = std::abs(det) > 1e-8;
        pp.minimal_period = M;
        for (long m = 1; m < M; ++m) {
            if (M % m != 0) continue;
            OrbitEval om = orbit_eval(g, p, m);
            if (norm2(om.points.back(), p) < cfg.cluster_tol) {
                pp.minimal_period = m;
                break;
            }
        }
        out.push_back(pp);
    }
    return out;
}

namespace {

FloatGerm random_low_order_perturbation(std::mt19937_64& rng, double epsilon) {
    FloatGerm p;
    auto coef = [&]() {
        auto unit = [&]() { return 2.0 * ((rng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0; };
        return epsilon * Complex(unit(), unit());
    };
    for (int j = 0; j < 2; ++j) {
        p.set_coeff(j, 1, 0, coef());
        p.set_coeff(j, 0, 1, coef());
        p.set_coeff(j, 2, 0, coef());
        p.set_coeff(j, 1, 1, coef());
        p.set_coeff(j, 0, 2, coef());
    }
    return p;
}

} // namespace

NumericCount numeric_orbit_count(const GermMap& f, long M, const NumericConfig& cfg) {
    cfg.validate();
    EmbeddedGerm base = embed(f);

    NumericCount out;
    out.embedding_error_bound = base.embedding_error_bound;
    const double decades[2] = {cfg.epsilon, cfg.epsilon / 10.0};
    for (int d = 0; d < 2; ++d) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(d) * 0x9e3779b9ULL + 1);
        FloatGerm g = base.germ;
        g += random_low_order_perturbation(rng, decades[d]);
        NumericConfig local = cfg;
        local.seed = cfg.seed + static_cast<std::uint64_t>(d);
        auto points = find_period_points(g, M, local);

        long period_M_points = 0;
        for (const auto& pp : points) {
            out.max_residual = std::max(out.max_residual, pp.residual);
            if (!pp.certified) out.all_certified = false;
            if (pp.minimal_period == M) ++period_M_points;
        }
        if (period_M_points % M != 0) {
            out.count_at_decade[d] = -1; // ragged orbits: missed points
        } else {
            out.count_at_decade[d] = period_M_points / M;
        }
    }
    out.agreed = out.count_at_decade[0] >= 0 && out.count_at_decade[0] == out.count_at_decade[1];
    out.orbits = out.agreed ? out.count_at_decade[0] : -1;
    return out;
}

} // namespace periorb
