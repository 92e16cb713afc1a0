#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

namespace rackforge {

// Sparse integer matrix with arbitrary-precision entries, built for Smith
// normal form of boundary matrices (entries start at ±1, fill-in can grow).
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_data_(rows) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, long v);
    void set(std::size_t r, std::size_t c, mpz_class v);
    mpz_class get(std::size_t r, std::size_t c) const;
    std::size_t nonzeros() const;

    const std::map<std::size_t, mpz_class> &row(std::size_t r) const { return row_data_[r]; }

private:
    std::size_t rows_, cols_;
    std::vector<std::map<std::size_t, mpz_class>> row_data_;
    friend struct SnfWorker;
};

// Elementary divisors d₁ | d₂ | …, each > 0, padded with nothing (zeros are
// dropped); rank = divisors.size().
struct SmithResult {
    std::vector<mpz_class> divisors;
    std::size_t rank() const { return divisors.size(); }
};

// Exact SNF by smallest-pivot elimination with gcd reduction; destroys a copy.
SmithResult smith_normal_form(const IntMatrix &M);

// rank over ℚ (same elimination, divisor values ignored)
std::size_t int_rank(const IntMatrix &M);

}  // namespace rackforge
