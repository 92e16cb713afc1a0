#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <vector>

namespace rackforge {

// Exact element of the m-th cyclotomic field ℚ(ζ_m): integer-indexed
// polynomial residue modulo Φ_m with rational coefficients. For m ≤ 2 the
// field is ℚ and every value is a single rational.
class CycScalar {
public:
    CycScalar() : m_(1), c_(1, 0) {}
    explicit CycScalar(unsigned m) : m_(m), c_(phi_degree(m), 0) {}
    static CycScalar from_rational(unsigned m, const mpq_class &v);
    static CycScalar root_power(unsigned m, unsigned long e);  // ζ_m^e

    unsigned m() const { return m_; }
    bool is_zero() const;
    bool operator==(const CycScalar &o) const;

    CycScalar operator+(const CycScalar &o) const;
    CycScalar operator-(const CycScalar &o) const;
    CycScalar operator*(const CycScalar &o) const;
    CycScalar operator-() const;
    CycScalar inverse() const;  // throws on zero

    CycScalar &operator+=(const CycScalar &o) { return *this = *this + o; }
    CycScalar &operator-=(const CycScalar &o) { return *this = *this - o; }
    CycScalar &operator*=(const CycScalar &o) { return *this = *this * o; }

    // rational value when m ≤ 2 or the element is rational
    const mpq_class &rational() const;

    static unsigned phi_degree(unsigned m);
    // monic Φ_m as integer coefficients c₀..c_{deg} (c_deg = 1)
    static const std::vector<mpz_class> &cyclotomic(unsigned m);

private:
    unsigned m_;
    std::vector<mpq_class> c_;  // length φ(m)
    void reduce(std::vector<mpq_class> &poly) const;
};

}  // namespace rackforge
