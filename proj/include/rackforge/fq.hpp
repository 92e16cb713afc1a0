#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rackforge/perm.hpp"

namespace rackforge {

struct field_error : std::runtime_error {
    explicit field_error(const std::string &what) : std::runtime_error(what) {}
};

// 𝔽_q for prime q, or polynomial residues 𝔽_p[a]/(f) for the prime powers
// q ∈ {4,8,9,16,25,27,32,49} with a fixed published irreducible f. Elements
// are encoded as integers 0..q−1: the base-p digit vector of the residue,
// least degree first. The encoding is the canonical enumeration order.
class Fq {
public:
    explicit Fq(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned deg() const { return deg_; }

    unsigned add(unsigned a, unsigned b) const;
    unsigned sub(unsigned a, unsigned b) const;
    unsigned neg(unsigned a) const;
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
    unsigned inv(unsigned a) const;
    unsigned pow(unsigned a, std::uint64_t e) const;

    unsigned zero() const { return 0; }
    unsigned one() const { return 1; }
    // the residue class of the adjoined generator (= p encoded); for prime q
    // this is the element 1·p … not defined, so it throws.
    unsigned generator_element() const;
    // smallest element (canonical enumeration) generating 𝔽_q^×.
    unsigned primitive_element() const;
    // multiplicative order
    unsigned element_order(unsigned a) const;

private:
    unsigned q_, p_, deg_;
    std::vector<unsigned> mul_;  // dense q×q multiplication table
    std::vector<unsigned> inv_;
};

// A square matrix over 𝔽_q; entries row-major in the canonical encoding.
struct FqMatrix {
    unsigned n = 0;
    unsigned q = 0;
    std::vector<unsigned> entries;  // n*n

    unsigned at(unsigned r, unsigned c) const { return entries[r * n + c]; }
    unsigned &at(unsigned r, unsigned c) { return entries[r * n + c]; }
};

FqMatrix fq_identity(unsigned n, unsigned q);
FqMatrix fq_mul(const Fq &F, const FqMatrix &A, const FqMatrix &B);
bool fq_is_invertible(const Fq &F, const FqMatrix &A);

enum class MatrixAction { vectors, projective };

// Permutations induced on the q^n−1 nonzero column vectors (resp. the
// (q^n−1)/(q−1) projective points) in lexicographic coordinate order.
// Throws on singular generators or when the point count exceeds the cap.
std::vector<Permutation> matrix_group_to_perm(unsigned n, unsigned q,
                                              const std::vector<FqMatrix> &gens,
                                              MatrixAction action);

}  // namespace rackforge
