#pragma once

#include <cstdint>
#include <vector>

#include "rackforge/intmat.hpp"
#include "rackforge/rack.hpp"

namespace rackforge {

struct HomologyResult {
    unsigned degree = 0;
    unsigned betti = 0;
    std::vector<unsigned long> torsion;  // elementary divisors > 1, divisibility chain
};

// Matrix of ∂_n : ℤ[X^n] → ℤ[X^{n−1}] in lexicographic tuple bases (rows are
// (n−1)-tuples, columns n-tuples). ∂₁ = 0 into C₀ = ℤ.
IntMatrix boundary_matrix(const Rack &X, unsigned n);

// H_n = ker ∂_n / im ∂_{n+1} via Smith normal form.
HomologyResult rack_homology(const Rack &X, unsigned n);

// An abelian group presented as free rank + cyclic torsion orders; used both
// for Hom(H₂, ℤ/m) and for the symbolic Hom(H₂, ℂ^×) form.
struct DualGroup {
    unsigned free_rank = 0;              // each factor ≅ ℤ/m (or ℂ^× symbolically)
    std::vector<unsigned long> cyclic;   // finite cyclic factor orders > 1
    unsigned long order(unsigned long m) const {  // |Hom| with ℤ/m coefficients
        unsigned long o = 1;
        for (unsigned i = 0; i < free_rank; ++i) o *= m;
        for (auto c : cyclic) o *= c;
        return o;
    }
};

// Hom(H_n, ℤ/m): free rank contributes (ℤ/m)^r, torsion ℤ/d contributes
// ℤ/gcd(d,m). With m = 0, the symbolic ℂ^× form: free rank copies of ℂ^×
// and the torsion duals 𝔾_d themselves.
DualGroup h2_dual(const HomologyResult &h, unsigned long m);

}  // namespace rackforge
