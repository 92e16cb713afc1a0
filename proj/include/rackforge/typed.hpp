#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rackforge/perm.hpp"
#include "rackforge/rack.hpp"

namespace rackforge {

enum class TypeDStatus { TYPE_D, NOT_TYPE_D, INCONCLUSIVE };

struct TypeDWitness {
    std::uint32_t r = 0, s = 0;      // rack indices (or class indices)
    std::uint32_t closure_size = 0;  // |⟪{r,s}⟫| (or |O^H_r ∪ O^H_s|)
    std::vector<std::uint32_t> orbit_sizes;  // the two parts of the decomposition
};

struct TypeDVerdict {
    TypeDStatus status = TypeDStatus::INCONCLUSIVE;
    std::optional<TypeDWitness> witness;
    std::string method;

    bool is_type_d() const { return status == TypeDStatus::TYPE_D; }
};

const char *to_string(TypeDStatus s);

// r▷(s▷(r▷s)) ≠ s
bool condition_pair(const Rack &X, unsigned r, unsigned s);

// Full rack-level decision: scans orbit representatives r against all s,
// closing ⟪{r,s}⟫ and splitting it by inner orbits. NOT_TYPE_D only after an
// exhaustive scan. Every TYPE_D witness is re-verified from scratch.
TypeDVerdict is_type_D_rack(const Rack &X);

// The group-form algorithm: fix r = x, iterate s over the class; on
// (rs)² ≠ (sr)², build H = ⟨r,s⟩ and test disjointness of the H-classes.
// H enumeration overflow downgrades a negative verdict to INCONCLUSIVE.
TypeDVerdict is_type_D_class(const PermGroup &G, const Permutation &x);

// all j in 2..ord(g)−1 with g^j ≠ g and g^j in the class of g
std::set<unsigned> quasi_real_types(const PermGroup &G, const Permutation &g);

// the commuting-product criterion: τκ with the quasi-real/coprime-order
// hypotheses; TYPE_D for the class of τκ or INCONCLUSIVE (one-directional)
TypeDVerdict jordan_criterion(const PermGroup &G, const Permutation &tau, const Permutation &kappa);

// R_κ: g ↦ gκ identifies the K-class of τ with a subrack of the G-class of
// τκ; recursion through is_type_D_class on K.
TypeDVerdict subrack_lift_check(const PermGroup &G, const PermGroup &K, const Permutation &kappa,
                                const Permutation &tau);

// every two-generated closure is indecomposable or equals {r,s}; input must
// be indecomposable
bool is_type_M(const Rack &X);

// independent re-check of a witness on a rack (used by tests and reports)
bool verify_witness_rack(const Rack &X, const TypeDWitness &w);

// the same re-check carried out directly on a conjugacy class, without a
// dense table: closure by conjugation, orbit split by closure translations
bool verify_witness_class(const PermGroup &G, const Permutation &x, const TypeDWitness &w);

}  // namespace rackforge
