#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rackforge/rack.hpp"

namespace rackforge {

// A rack 2-cocycle with values in 𝔾_m, stored as exponents mod m:
// q_{x,y} = ζ_m^{exp[x][y]}.
struct ScalarCocycle {
    unsigned m = 1;
    std::vector<std::vector<std::uint32_t>> exp;

    unsigned size() const { return static_cast<unsigned>(exp.size()); }
    static ScalarCocycle constant(unsigned rack_size, unsigned m, std::uint32_t e);
};

// Map γ: X → 𝔾_m in exponent form.
struct GaugeMap {
    unsigned m = 1;
    std::vector<std::uint32_t> gamma;
};

struct Triple {
    unsigned x, y, z;
};

// Exhaustive check of q_{x,y▷z} q_{y,z} = q_{x▷y,x▷z} q_{x,z}; returns the
// first violating triple or nullopt when q is a cocycle.
std::optional<Triple> cocycle_violation(const Rack &X, const ScalarCocycle &q);
bool is_cocycle(const Rack &X, const ScalarCocycle &q);

// Finite abelian group as free rank (ℤ/m or ℂ^× factors, by context) plus a
// sorted multiset of prime-power cyclic orders.
struct AbelianGroup {
    unsigned free_rank = 0;
    std::vector<unsigned long> prime_power_cyclic;

    bool operator==(const AbelianGroup &o) const = default;
    std::string to_string() const;
    // group order, free factors counted as `m` each
    unsigned long long order_with(unsigned long m) const;
    static AbelianGroup from_cyclic_orders(const std::vector<unsigned long> &orders);
};

struct CocycleSpace {
    AbelianGroup z2, b2, h2;
    // representatives of a basis of H² beyond the constants (exponent
    // matrices); complete for squarefree m
    std::vector<ScalarCocycle> h2_reps;
    bool reps_complete = false;
};

// Z², B², H² = Z²/B² over 𝔾_m. |X| must be within the cocycle cap.
CocycleSpace cocycle_space(const Rack &X, unsigned m);

// Orders |H²(X, 𝔾_{p^j})| as log_p for j = 1..k, by the streaming GF(p) /
// local-ring route; exposed for big classes where only orders are wanted.
std::vector<unsigned long> h2_log_orders(const Rack &X, unsigned p, unsigned k);

// The χ cocycle on the transposition rack of S_{m_sym}, root order 2,
// together with the rack it lives on (class of (0 1), BFS order).
struct ChiData {
    Rack rack;
    ScalarCocycle q;
};
ChiData chi_cocycle(unsigned m_sym);

// q̃_{ij} = γ_{i▷j}^{-1} q_{ij} γ_j
ScalarCocycle gauge_transform(const Rack &X, const ScalarCocycle &q, const GaugeMap &g);

// gauge witness γ with q' = q̃ via γ, or definitive nullopt
std::optional<GaugeMap> are_gauge_equivalent(const Rack &X, const ScalarCocycle &q,
                                             const ScalarCocycle &qp);

// exhaustive triple check of the twist compatibility condition; nullopt = ok
std::optional<Triple> twist_condition_violation(const Rack &X,
                                                const std::vector<std::vector<std::uint32_t>> &phi,
                                                unsigned m);
bool twist_condition(const Rack &X, const std::vector<std::vector<std::uint32_t>> &phi, unsigned m);

// basis of the solution space of the twist condition over 𝔾_m (m prime),
// as flattened exponent arrays
std::vector<std::vector<std::uint8_t>> twist_condition_space(const Rack &X, unsigned p);

// q^φ_{xy} = φ(x,y) φ^{-1}(x▷y, x) q_{xy}; requires the twist condition
ScalarCocycle twist(const Rack &X, const ScalarCocycle &q,
                    const std::vector<std::vector<std::uint32_t>> &phi);

// exponent matrix (q_{ij})_{i,j∈S}; S must be abelian
std::vector<std::vector<std::uint32_t>> diagonal_braiding(const Rack &X, const ScalarCocycle &q,
                                                          const std::vector<std::uint16_t> &S);

// dual braided data (X^{[−1]}, q̂) with q̂_{x,y} = q_{x, x▷^{-1}y}
std::pair<Rack, ScalarCocycle> dual_cocycle(const Rack &X, const ScalarCocycle &q);

}  // namespace rackforge
