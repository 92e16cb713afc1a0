#pragma once

#include <cstdint>
#include <vector>

#include "rackforge/perm.hpp"
#include "rackforge/rack.hpp"
#include "rackforge/typed.hpp"

namespace rackforge {

// Twisted homogeneous rack data: the class C_ℓ of (L, t, θ) with
// u(ℓ₁,…,ℓ_t) = (θ(ℓ_t), ℓ₁,…,ℓ_{t−1}).
struct THRSpec {
    const PermGroup *L = nullptr;
    unsigned t = 2;
    GroupAutomorphism theta;  // identity table = trivial θ
    Permutation ell;
};

// ℓ = x_t·x_{t−1}⋯x₂·x₁
Permutation normalize_representative(const std::vector<Permutation> &tuple);

// The rack C_ℓ := twisted class of (e,…,e,ℓ) in L^t under the shift-θ
// automorphism, grown by orbit BFS (L^t is never enumerated). Labels encode
// the tuples.
Rack build_thr(const THRSpec &spec);

// size of C_ℓ without building the table: |L|^{t−1} · |O^{L,θ}_ℓ|
std::uint64_t thr_class_size(const THRSpec &spec);

// §7 rules for θ = id, in order: quasi-real, involution/even t, involution/
// odd t with O_ℓ of type D, gcd(t,|L|) rules, plus the checked negatives
// (re-verified by the generic rack scan when within cap).
TypeDVerdict thr_criteria(const THRSpec &spec);

}  // namespace rackforge
