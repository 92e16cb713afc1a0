#pragma once

#include <cstdint>
#include <vector>

#include "rackforge/cocycle.hpp"
#include "rackforge/cyc.hpp"
#include "rackforge/rack.hpp"

namespace rackforge {

// Braided vector space (ℂX, c^q) for a scalar cocycle q.
struct BraidedSpace {
    const Rack *X = nullptr;
    ScalarCocycle q;

    unsigned dim() const { return X->size(); }
};

// The monomial braiding c^q(e_x ⊗ e_y) = ζ^{exp} e_{x▷y} ⊗ e_x, stored
// column-wise on the |X|² basis pairs (x,y) ↦ x·|X|+y.
struct Braiding {
    unsigned n = 0;  // |X|
    unsigned m = 1;
    std::vector<std::uint32_t> row_of_col;
    std::vector<std::uint32_t> exp_of_col;
};

// builds c^q and asserts the braid equation on all basis triples
Braiding braiding(const BraidedSpace &V);

// Q_n = Σ_{σ∈S_n} ρ_n(M(σ)) as sparse columns over ℚ(ζ_m);
// |X|^n capped by the symmetrizer-cells cap.
std::vector<std::vector<std::pair<std::uint32_t, CycScalar>>> symmetrizer(const BraidedSpace &V,
                                                                          unsigned n);

// rank of Q_n = dimension of the degree-n component of the Nichols algebra
unsigned long symmetrizer_rank(const BraidedSpace &V, unsigned n);
// dim ker Q_n = number of degree-n relations
unsigned long symmetrizer_kernel_dim(const BraidedSpace &V, unsigned n);

struct NicholsReport {
    std::vector<unsigned long> dims;  // degrees 0..last computed
    bool finite = false;
    bool truncated = false;
    unsigned long long total = 0;  // set when finite
    unsigned top = 0;              // set when finite
};

// dims by the incremental derivation engine (B_n = (ℂX ⊗ B_{n−1})/ker D with
// the left-derivation recursion); declares finite at the first zero component
NicholsReport hilbert_series(const BraidedSpace &V, unsigned max_degree);

// graded dims of the quadratic cover T(V)/⟨ker Q₂⟩ up to max_degree
std::vector<unsigned long> quadratic_cover_dims(const BraidedSpace &V, unsigned max_degree);

// Poincaré-series invariance under twisting, compared up to max_degree
bool poincare_twist_check(const BraidedSpace &V, const std::vector<std::vector<std::uint32_t>> &phi,
                          unsigned max_degree);

}  // namespace rackforge
