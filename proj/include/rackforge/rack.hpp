#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rackforge/fq.hpp"
#include "rackforge/perm.hpp"

namespace rackforge {

// Structured rack-axiom failure: names the first violated axiom and the
// witness tuple (unused positions are −1).
struct rack_validation_error : std::runtime_error {
    enum class Kind { non_bijective, self_distributivity, quandle, crossed_set, shape };
    Kind kind;
    int x = -1, y = -1, z = -1;
    rack_validation_error(Kind k, const std::string &what, int x_ = -1, int y_ = -1, int z_ = -1)
        : std::runtime_error(what), kind(k), x(x_), y(y_), z(z_) {}
};

// A finite rack (crossed set) as a validated dense operation table.
class Rack {
public:
    // Validates the axioms; throws rack_validation_error naming the first
    // violation. Labels default to element indices.
    static Rack validate(std::vector<std::vector<std::uint16_t>> table,
                         std::vector<std::string> labels = {},
                         std::string provenance = {});

    unsigned size() const { return n_; }
    std::uint16_t op(unsigned x, unsigned y) const { return table_[x][y]; }         // x ▷ y
    std::uint16_t op_inv(unsigned x, unsigned y) const { return inv_table_[x][y]; } // x ▷⁻¹ y

    const std::vector<std::vector<std::uint16_t>> &table() const { return table_; }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &provenance() const { return prov_; }

    Permutation translation(unsigned x) const;  // φ_x

    bool operator==(const Rack &o) const { return table_ == o.table_; }

private:
    unsigned n_ = 0;
    std::vector<std::vector<std::uint16_t>> table_;
    std::vector<std::vector<std::uint16_t>> inv_table_;
    std::vector<std::string> labels_;
    std::string prov_;
};

struct SubrackHandle {
    const Rack *parent = nullptr;
    std::vector<std::uint16_t> members;  // sorted parent indices
};

// ---- constructions ----

// Conjugation rack on the class of x in G, in BFS class order; labels are
// cycle strings.
Rack from_conjugacy_class(const PermGroup &G, const Permutation &x);

// Twisted conjugacy class rack: orbit of x under a ⇀_u b = a·b·u(a⁻¹),
// with operation y ▷ z = y·u(z·y⁻¹).
Rack from_twisted_class(const PermGroup &G, const GroupAutomorphism &u, const Permutation &x);

// Affine rack on ℤ/m₁ × … × ℤ/m_t with x ▷ y = (1−T)x + Ty. T is given as a
// t×t integer matrix acting on column vectors, invertible over the ring.
Rack affine_rack(const std::vector<unsigned> &moduli, const std::vector<std::vector<long long>> &T);
// Convenience: ℤ/m with multiplication by scalar t.
Rack affine_rack(unsigned modulus, long long t);
// 𝔽_q with multiplication by a (the "class of X in F_p[X]/(f)" presentation).
Rack affine_rack_fq(unsigned q, unsigned a);

// x ▷^j y = φ_x^j(y)
Rack power_rack(const Rack &X, long long j);

// componentwise product on pairs, index (x,z) ↦ x·|Z|+z
Rack product_rack(const Rack &X, const Rack &Z);

// ---- structure ----

// smallest subrack containing S (closure under ▷ and ▷⁻¹)
SubrackHandle subrack_closure(const Rack &X, const std::vector<std::uint16_t> &seeds);

// orbits of the inner group on X, each sorted, ordered by least member
std::vector<std::vector<std::uint16_t>> orbit_decomposition(const Rack &X);

// permutation group generated by the translations φ_x
PermGroup inner_group(const Rack &X);

// rank of the free part of the defect group = number of inner orbits
unsigned defect_rank(const Rack &X);

// rack isomorphism search (translation-cycle-type pruned backtracking);
// returns the bijection images X→Y or nullopt.
std::optional<std::vector<std::uint16_t>> is_isomorphic(const Rack &X, const Rack &Y);

// all subracks with |S| ≤ max_size (exhaustive closure-based enumeration;
// requires |X| within the exhaustive cap)
std::vector<SubrackHandle> enumerate_subracks(const Rack &X, unsigned max_size);

// maximal abelian subracks = maximal cliques of the commutation graph
std::vector<std::vector<std::uint16_t>> abelian_subracks(const Rack &X);

// restriction of X to a closed member set, reindexed
Rack restrict_rack(const Rack &X, const std::vector<std::uint16_t> &members);

// ---- §5.3 torus racks and the affine-model certificate ----

struct TorusRack {
    Rack realized;       // X_{a,ξ} via the monomial matrices μ_x, conjugation
    Rack affine_model;   // Q_{(ℤ/(q−1))^{n−1}, g}
};

TorusRack torus_rack(unsigned n, unsigned q, unsigned a);

// true iff x ∉ Im(1−g) over ℤ/m and x − g x + g²x − g³x ≠ 0; then the class
// of n_σ is of type D.
bool affine_model_typeD_certificate(const std::vector<std::vector<long long>> &g,
                                    unsigned modulus, const std::vector<long long> &x);

}  // namespace rackforge
