#include "periorb/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace periorb {

namespace {

// Quotient of two integer polynomials, divisor monic, division exact.
std::vector<Integer> exact_div(const std::vector<Integer>& num, const std::vector<Integer>& den) {
    if (den.empty() || den.back() != 1) throw std::logic_error("divisor must be monic");
    const size_t dn = den.size() - 1;
    if (num.size() < den.size()) throw std::logic_error("degree underflow in exact_div");
    std::vector<Integer> rem = num;
    std::vector<Integer> quot(num.size() - dn, 0);
    for (size_t i = quot.size(); i-- > 0;) {
        Integer c = rem[i + dn];
        if (c != 0) {
            quot[i] = c;
            for (size_t j = 0; j <= dn; ++j) rem[i + j] -= c * den[j];
        }
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("division was not exact");
    return quot;
}

std::vector<long> divisors_of(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string s(text);
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw std::invalid_argument("bad rational literal: " + s);
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<Integer> cyclotomic_poly(long level) {
    if (level < 1) throw std::invalid_argument("cyclotomic level must be positive");
    if (level > kMaxCyclotomicLevel) throw std::length_error("cyclotomic level above configured cap");

    static std::map<long, std::vector<Integer>> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(level);
        if (it != cache.end()) return it->second;
    }

    std::vector<Integer> result;
    if (level == 1) {
        result = {Integer(-1), Integer(1)}; // X - 1
    } else {
        // X^L - 1 divided by the product of Phi_d over proper divisors d.
        std::vector<Integer> num(static_cast<size_t>(level) + 1, 0);
        num[0] = -1;
        num[static_cast<size_t>(level)] = 1;
        for (long d : divisors_of(level)) {
            if (d == level) continue;
            num = exact_div(num, cyclotomic_poly(d));
        }
        result = std::move(num);
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(level, result);
    return result;
}

CycloContext::CycloContext(long level)
    : level_(level), phi_(euler_phi(level)), modulus_(cyclotomic_poly(level)) {}

std::shared_ptr<const CycloContext> CycloContext::get(long level) {
    static std::map<long, std::shared_ptr<const CycloContext>> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<const CycloContext>(new CycloContext(level));
    cache.emplace(level, ctx);
    return ctx;
}

void require_same_context(const CycloNum& a, const CycloNum& b) {
    if (!a.context() || !b.context() || a.context()->level() != b.context()->level())
        throw std::invalid_argument("cyclotomic context mismatch");
}

CycloNum::CycloNum(CycloContextPtr ctx, const Rational& constant) : ctx_(std::move(ctx)) {
    coeffs_.assign(static_cast<size_t>(ctx_->phi()), Rational(0));
    coeffs_[0] = constant;
}

CycloNum CycloNum::zero(CycloContextPtr ctx) { return CycloNum(std::move(ctx), Rational(0)); }
CycloNum CycloNum::one(CycloContextPtr ctx) { return CycloNum(std::move(ctx), Rational(1)); }

CycloNum CycloNum::zeta_pow(CycloContextPtr ctx, long exponent) {
    const long level = ctx->level();
    exponent %= level;
    if (exponent < 0) exponent += level;
    CycloNum r = zero(ctx);
    std::vector<Rational> raw(static_cast<size_t>(exponent) + 1, Rational(0));
    raw.back() = Rational(1);
    r.reduce(raw);
    r.coeffs_ = std::move(raw);
    return r;
}

CycloNum CycloNum::from_coeffs(CycloContextPtr ctx, std::vector<Rational> coeffs) {
    CycloNum r = zero(std::move(ctx));
    r.reduce(coeffs);
    r.coeffs_ = std::move(coeffs);
    return r;
}

bool CycloNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycloNum::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CycloNum::rational_value() const {
    if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

// Reduces a raw coefficient vector (any length) mod the monic Phi_L in place;
// afterwards raw.size() == phi.
void CycloNum::reduce(std::vector<Rational>& raw) const {
    const auto& mod = ctx_->modulus();
    const size_t phi = static_cast<size_t>(ctx_->phi());
    while (raw.size() > phi) {
        Rational lead = raw.back();
        size_t deg = raw.size() - 1;
        raw.pop_back();
        if (lead != 0) {
            for (size_t j = 0; j < phi; ++j) {
                raw[deg - phi + j] -= lead * Rational(mod[j]);
            }
        }
    }
    raw.resize(phi, Rational(0));
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& rhs) {
    require_same_context(*this, rhs);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& rhs) {
    require_same_context(*this, rhs);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& rhs) {
    require_same_context(*this, rhs);
    const size_t n = coeffs_.size();
    std::vector<Rational> raw(2 * n - 1, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            raw[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    reduce(raw);
    coeffs_ = std::move(raw);
    return *this;
}

CycloNum& CycloNum::scale(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
}

namespace {

// Polynomials over Q, constant term first, no trailing zeros.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Remainder-producing division over Q[X].
std::pair<QPoly, QPoly> poly_divmod(QPoly num, const QPoly& den) {
    if (den.empty()) throw std::logic_error("polynomial division by zero");
    QPoly quot;
    if (num.size() >= den.size()) {
        quot.assign(num.size() - den.size() + 1, Rational(0));
        for (size_t i = quot.size(); i-- > 0;) {
            size_t lead = i + den.size() - 1;
            if (lead >= num.size() || num[lead] == 0) continue;
            Rational c = num[lead] / den.back();
            quot[i] = c;
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
    }
    trim(num);
    trim(quot);
    return {quot, num};
}

} // namespace

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
    if (is_rational()) {
        CycloNum r = *this;
        r.coeffs_[0] = Rational(1) / r.coeffs_[0];
        for (size_t i = 1; i < r.coeffs_.size(); ++i) r.coeffs_[i] = 0;
        return r;
    }
    // Extended Euclid for gcd(a, Phi_L) over Q[X]; Phi_L is irreducible, so
    // the gcd is a nonzero constant and the Bezout coefficient of a inverts it.
    QPoly r0;
    for (const auto& m : ctx_->modulus()) r0.push_back(Rational(m));
    QPoly r1(coeffs_);
    trim(r1);
    QPoly s0;                 // coefficient of a in the combination giving r0
    QPoly s1 = {Rational(1)}; // likewise for r1
    while (r1.size() > 1) {
        auto [q, rem] = poly_divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("non-invertible residue mod irreducible Phi_L");
    QPoly inv = s1;
    for (auto& c : inv) c /= r1[0];
    return from_coeffs(ctx_, std::move(inv));
}

CycloNum& CycloNum::operator/=(const CycloNum& rhs) {
    require_same_context(*this, rhs);
    return *this *= rhs.inverse();
}

CycloNum CycloNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum base = *this;
    CycloNum acc = one(ctx_);
    while (e > 0) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

bool CycloNum::operator==(const CycloNum& rhs) const {
    require_same_context(*this, rhs);
    return coeffs_ == rhs.coeffs_;
}

std::string CycloNum::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        Rational mag = c;
        if (!first) {
            if (sgn(c) < 0) {
                out << '-';
                mag = -c;
            } else {
                out << '+';
            }
        }
        if (i == 0) {
            out << rational_str(mag);
        } else if (mag == 1) {
            out << (i == 1 ? std::string("z") : "z^" + std::to_string(i));
        } else {
            out << rational_str(mag) << "*z^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return out.str();
}

namespace {

struct CoeffParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= text.size()) throw std::invalid_argument("unexpected end of coefficient");
        return text[pos++];
    }

    std::string take_uint() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("expected digits in coefficient string");
        return std::string(text.substr(start, pos - start));
    }

    Rational take_rational() {
        std::string lit;
        if (peek() == '-') {
            take();
            lit = "-";
        }
        lit += take_uint();
        if (peek() == '/') {
            take();
            lit += "/" + take_uint();
        }
        return parse_rational(lit);
    }

    // term := rational ('*' 'z^' uint)? | 'z^' uint | 'z'
    std::pair<Rational, long> take_term() {
        if (peek() == 'z') {
            take();
            long e = 1;
            if (peek() == '^') {
                take();
                e = std::stol(take_uint());
            }
            return {Rational(1), e};
        }
        Rational c = take_rational();
        if (peek() == '*') {
            take();
            if (take() != 'z' || take() != '^')
                throw std::invalid_argument("expected z^<uint> after '*'");
            long e = std::stol(take_uint());
            return {c, e};
        }
        return {c, 0};
    }
};

} // namespace

CycloNum CycloNum::parse(CycloContextPtr ctx, std::string_view text) {
    CoeffParser p{text};
    CycloNum acc = CycloNum::zero(ctx);
    bool first = true;
    while (!p.eof()) {
        Rational sign(1);
        if (!first) {
            char op = p.take();
            if (op == '-')
                sign = -1;
            else if (op != '+')
                throw std::invalid_argument("expected '+' or '-' between terms");
        }
        auto [c, e] = p.take_term();
        CycloNum term = CycloNum::zeta_pow(ctx, e);
        term.scale(c * sign);
        acc += term;
        first = false;
    }
    if (first) throw std::invalid_argument("empty coefficient string");
    return acc;
}

RootOfUnity::RootOfUnity(CycloContextPtr context, long k) : ctx(std::move(context)) {
    const long level = ctx->level();
    exponent = k % level;
    if (exponent < 0) exponent += level;
}

long RootOfUnity::order() const {
    return exponent == 0 ? 1 : ctx->level() / std::gcd(ctx->level(), exponent);
}

CycloNum RootOfUnity::value() const {
    return CycloNum::zeta_pow(ctx, exponent);
}

std::optional<long> root_order(const CycloNum& u) {
    if (u.is_zero()) throw std::invalid_argument("root_order of zero");
    const long level = u.context()->level();
    if (!u.pow(level).is_one()) return std::nullopt;
    for (long m = 1; m <= level; ++m) {
        if (level % m != 0) continue;
        if (u.pow(m).is_one()) return m;
    }
    return std::nullopt; // unreachable: u^level == 1
}

namespace {

long mod_inverse(long a, long m) {
    long r0 = a % m, r1 = m, x0 = 1, x1 = 0;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long x2 = x0 - q * x1;
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
    }
    if (r0 != 1 && r0 != -1) throw std::logic_error("element not invertible modulo m");
    if (r0 == -1) x0 = -x0;
    return ((x0 % m) + m) % m;
}

} // namespace

std::optional<long> power_relation(const RootOfUnity& l1, const RootOfUnity& l2) {
    if (l1.ctx->level() != l2.ctx->level())
        throw std::invalid_argument("power_relation requires a common context");
    const long L = l1.ctx->level();
    const long k1 = l1.exponent, k2 = l2.exponent;
    // Solve k1 * alpha == k2 (mod L) for the least alpha >= 1.
    if (k1 == 0) return (k2 == 0) ? std::optional<long>(1) : std::nullopt;
    const long g = std::gcd(k1, L);
    if (k2 % g != 0) return std::nullopt;
    const long Lr = L / g;
    if (Lr == 1) return 1;
    const long inv = mod_inverse((k1 / g) % Lr, Lr);
    long alpha = static_cast<long>((static_cast<__int128>(inv) * ((k2 / g) % Lr)) % Lr);
    if (alpha == 0) alpha = Lr;
    return alpha;
}

} // namespace periorb
