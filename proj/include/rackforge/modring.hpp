#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace rackforge {

// Incremental reduced row echelon over GF(p). add_sparse reduces the row
// against the current pivots and, when independent, installs it and keeps the
// basis fully reduced, so kernel extraction is a direct read-off.
class RrefBase {
public:
    virtual ~RrefBase() = default;
    // terms: (column, coefficient) with distinct columns; returns true when
    // the row increased the rank
    virtual bool add_sparse(const std::vector<std::pair<std::uint32_t, std::int32_t>> &terms) = 0;
    virtual std::size_t rank() const = 0;
    virtual std::size_t cols() const = 0;
    // kernel of the row space seen so far, one value-vector per free column,
    // in increasing free-column order (deterministic)
    virtual std::vector<std::vector<std::uint8_t>> kernel_basis() const = 0;
};

std::unique_ptr<RrefBase> make_rref(unsigned p, std::size_t ncols);

// Dense linear algebra over ℤ/M for arbitrary M ≥ 2 (entries int64). Based on
// extended-gcd row transforms, so it is valid for composite M.
class ModMatrix {
public:
    ModMatrix(std::size_t rows, std::size_t cols, long long M);
    long long &at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    long long at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    long long modulus() const { return M_; }

private:
    std::size_t rows_, cols_;
    long long M_;
    std::vector<long long> a_;
};

// One solution of A·x ≡ b (mod M), or nullopt if none.
std::optional<std::vector<long long>> solve_mod(const ModMatrix &A, const std::vector<long long> &b);

// For M = p^k: log_p of the order of the column span of A inside (ℤ/M)^rows.
// Iterated Howell completion, so the count is exact over the local ring.
unsigned long mod_image_log(const ModMatrix &A, unsigned p, unsigned k);

}  // namespace rackforge
