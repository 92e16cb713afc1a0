#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rackforge {

// Size caps for the exact engines. Defaults match desk scale; every cap can
// be overridden through the RACKFORGE_CAPS environment variable, a JSON
// object such as {"group_elements": 20000000, "rack_size": 8192}.
struct Caps {
    std::uint64_t group_elements = 10'000'000;  // BFS enumeration cap
    std::uint32_t rack_size = 4096;             // dense rack tables
    std::uint32_t iso_size = 64;                // is_isomorphic backtracking
    std::uint32_t subrack_exhaustive = 16;      // enumerate_subracks
    std::uint64_t clique_count = 100'000;       // abelian_subracks output
    std::uint32_t homology_rack = 64;           // |X| for degree-2 homology
    std::uint64_t chain_cells = 2'000'000;      // |X|^n cells per boundary
    std::uint32_t cocycle_rack = 64;            // cocycle_space
    std::uint64_t symmetrizer_cells = 10'000;   // |X|^n oracle scale
    std::uint32_t nichols_degree = 40;          // hilbert_series degree cap
    std::uint32_t nichols_dim = 20'000;         // per-degree dimension cap
    std::uint32_t point_count = 65'535;        // matrix_group_to_perm points
    std::uint32_t jobs = 1;                     // data-parallel scan width
};

// Process-wide caps, initialized from RACKFORGE_CAPS on first use.
Caps &caps();

// Parse a JSON override string into `c`. Throws cap_config_error on bad input.
void apply_caps_json(Caps &c, const std::string &json_text);

struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string &what) : std::runtime_error(what) {}
};

struct cap_config_error : std::runtime_error {
    explicit cap_config_error(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace rackforge
