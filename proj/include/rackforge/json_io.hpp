#pragma once

#include <json.hpp>
#include <string>

#include "rackforge/cocycle.hpp"
#include "rackforge/fq.hpp"
#include "rackforge/homology.hpp"
#include "rackforge/perm.hpp"
#include "rackforge/rack.hpp"
#include "rackforge/typed.hpp"

namespace rackforge {

using ojson = nlohmann::ordered_json;

struct io_error : std::runtime_error {
    explicit io_error(const std::string &what) : std::runtime_error(what) {}
};

// Group file: { "degree": n, "generators": ["(0 1)(2 3)", ...] }
PermGroup load_group(const ojson &j);
PermGroup load_group_file(const std::string &path);

// Matrix group file: { "n": 2, "q": 5, "generators": [[[0,4],[1,0]], ...],
//                      "action": "projective" | "vectors" }
PermGroup load_matrix_group(const ojson &j);

// Rack file: { "size": n, "table": [[...]], "labels": [...], "provenance": "..." }
Rack load_rack(const ojson &j);
Rack load_rack_file(const std::string &path);
ojson rack_to_json(const Rack &X);

// Cocycle file: { "rack": "<path>" | {...}, "m": 2, "exponents": [[...]] }
std::pair<Rack, ScalarCocycle> load_cocycle_file(const std::string &path);
ojson cocycle_to_json(const ScalarCocycle &q);

ojson verdict_to_json(const TypeDVerdict &v);
ojson homology_to_json(const HomologyResult &h);
ojson group_structure_to_json(const AbelianGroup &g);

ojson read_json_file(const std::string &path);
void write_json_file(const std::string &path, const ojson &j);

// 64-bit FNV-1a digest of a byte string, hex-encoded (input fingerprints)
std::string fnv1a_hex(const std::string &bytes);

}  // namespace rackforge
