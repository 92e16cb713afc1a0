#include "rackforge/cyc.hpp"

#include <map>
#include <stdexcept>

namespace rackforge {

namespace {

// polynomial long division of x^m − 1 by the product of lower cyclotomics
std::vector<mpz_class> compute_cyclotomic(unsigned m,
                                          const std::map<unsigned, std::vector<mpz_class>> &lower) {
    std::vector<mpz_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d) continue;
        const auto &phi = lower.at(d);
        // num /= phi (exact)
        std::vector<mpz_class> quot(num.size() - phi.size() + 1, 0);
        std::vector<mpz_class> rem = num;
        for (std::size_t i = quot.size(); i-- > 0;) {
            mpz_class c = rem[i + phi.size() - 1];  // leading coeff of phi is 1
            quot[i] = c;
            if (c != 0)
                for (std::size_t k = 0; k < phi.size(); ++k) rem[i + k] -= c * phi[k];
        }
        num = std::move(quot);
    }
    return num;
}

const std::vector<mpz_class> &cyclotomic_cached(unsigned m) {
    static std::map<unsigned, std::vector<mpz_class>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    for (unsigned d = 1; d <= m; ++d)
        if (m % d == 0 && !cache.count(d)) cache.emplace(d, compute_cyclotomic(d, cache));
    return cache.at(m);
}

}  // namespace

unsigned CycScalar::phi_degree(unsigned m) {
    return static_cast<unsigned>(cyclotomic_cached(m).size() - 1);
}

const std::vector<mpz_class> &CycScalar::cyclotomic(unsigned m) { return cyclotomic_cached(m); }

CycScalar CycScalar::from_rational(unsigned m, const mpq_class &v) {
    CycScalar s(m);
    s.c_[0] = v;
    return s;
}

CycScalar CycScalar::root_power(unsigned m, unsigned long e) {
    CycScalar s(m);
    e %= m;
    std::vector<mpq_class> poly(e + 1, 0);
    poly[e] = 1;
    s.reduce(poly);
    poly.resize(s.c_.size(), 0);
    s.c_ = std::move(poly);
    return s;
}

void CycScalar::reduce(std::vector<mpq_class> &poly) const {
    const auto &phi = cyclotomic(m_);
    const std::size_t deg = phi.size() - 1;
    if (poly.size() <= deg) {
        poly.resize(deg, 0);
        return;
    }
    for (std::size_t i = poly.size(); i-- > deg;) {
        mpq_class c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        for (std::size_t k = 0; k < deg; ++k) poly[i - deg + k] -= c * phi[k];
    }
    poly.resize(deg);
}

bool CycScalar::is_zero() const {
    for (const auto &v : c_)
        if (v != 0) return false;
    return true;
}

bool CycScalar::operator==(const CycScalar &o) const { return m_ == o.m_ && c_ == o.c_; }

CycScalar CycScalar::operator+(const CycScalar &o) const {
    if (m_ != o.m_) throw std::invalid_argument("cyclotomic order mismatch");
    CycScalar s(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] + o.c_[i];
    return s;
}

CycScalar CycScalar::operator-(const CycScalar &o) const {
    if (m_ != o.m_) throw std::invalid_argument("cyclotomic order mismatch");
    CycScalar s(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] - o.c_[i];
    return s;
}

CycScalar CycScalar::operator-() const {
    CycScalar s(m_);
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = -c_[i];
    return s;
}

CycScalar CycScalar::operator*(const CycScalar &o) const {
    if (m_ != o.m_) throw std::invalid_argument("cyclotomic order mismatch");
    const std::size_t d = c_.size();
    if (d == 1) {  // rational fast path (m ≤ 2)
        CycScalar s(m_);
        s.c_[0] = c_[0] * o.c_[0];
        return s;
    }
    std::vector<mpq_class> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    CycScalar s(m_);
    s.reduce(prod);
    s.c_ = std::move(prod);
    return s;
}

CycScalar CycScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (c_.size() == 1) {
        CycScalar s(m_);
        s.c_[0] = 1 / c_[0];
        return s;
    }
    // extended Euclid over ℚ[x] against Φ_m
    std::vector<mpq_class> r0, r1 = c_, s0, s1{1};
    for (const auto &z : cyclotomic(m_)) r0.emplace_back(z);
    s0 = {};
    auto deg = [](const std::vector<mpq_class> &p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<long>(i);
        return -1L;
    };
    auto trim = [&](std::vector<mpq_class> &p) { p.resize(std::max<long>(deg(p) + 1, 1)); };
    trim(r1);
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<mpq_class> q(std::max<long>(deg(r0) - deg(r1) + 1, 1), 0);
        std::vector<mpq_class> rem = r0;
        long dr1 = deg(r1);
        mpq_class lead = r1[dr1];
        for (long i = deg(rem); i >= dr1; --i) {
            if (rem[i] == 0) continue;
            mpq_class f = rem[i] / lead;
            q[i - dr1] = f;
            for (long k = 0; k <= dr1; ++k) rem[i - dr1 + k] -= f * r1[k];
        }
        trim(rem);
        // s_new = s0 − q·s1
        std::vector<mpq_class> snew(std::max(s0.size(), q.size() + s1.size()), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (std::size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
        trim(s1);
    }
    if (deg(r1) != 0 || r1[0] == 0) throw std::domain_error("non-invertible cyclotomic element");
    // inverse = s1 / r1[0] reduced mod Φ
    std::vector<mpq_class> inv(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / r1[0];
    CycScalar out(m_);
    out.reduce(inv);
    inv.resize(out.c_.size(), 0);
    out.c_ = std::move(inv);
    return out;
}

const mpq_class &CycScalar::rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) throw std::domain_error("value is not rational");
    return c_[0];
}

}  // namespace rackforge
