#include "rackforge/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rackforge {

PermGroup load_group(const ojson &j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
        throw io_error("group file needs 'degree' and 'generators'");
    unsigned degree = j["degree"].get<unsigned>();
    std::vector<Permutation> gens;
    for (const auto &g : j["generators"]) gens.push_back(Permutation::from_cycles(g.get<std::string>(), degree));
    if (gens.empty()) gens.push_back(Permutation::identity(degree));
    return PermGroup(std::move(gens));
}

PermGroup load_group_file(const std::string &path) { return load_group(read_json_file(path)); }

PermGroup load_matrix_group(const ojson &j) {
    unsigned n = j.at("n").get<unsigned>();
    unsigned q = j.at("q").get<unsigned>();
    MatrixAction action = MatrixAction::vectors;
    if (j.contains("action")) {
        std::string a = j["action"].get<std::string>();
        if (a == "projective") action = MatrixAction::projective;
        else if (a == "vectors") action = MatrixAction::vectors;
        else throw io_error("action must be 'vectors' or 'projective'");
    }
    std::vector<FqMatrix> mats;
    for (const auto &mj : j.at("generators")) {
        FqMatrix M{n, q, {}};
        M.entries.reserve(static_cast<std::size_t>(n) * n);
        if (mj.size() != n) throw io_error("matrix generator has wrong row count");
        for (const auto &row : mj) {
            if (row.size() != n) throw io_error("matrix generator has wrong column count");
            for (const auto &e : row) M.entries.push_back(e.get<unsigned>());
        }
        mats.push_back(std::move(M));
    }
    auto perms = matrix_group_to_perm(n, q, mats, action);
    return PermGroup(std::move(perms));
}

Rack load_rack(const ojson &j_in) {
    // accept a raw rack file or a full report envelope
    const ojson &j = (j_in.is_object() && j_in.contains("payload")) ? j_in["payload"] : j_in;
    unsigned size = j.at("size").get<unsigned>();
    std::vector<std::vector<std::uint16_t>> table;
    for (const auto &row : j.at("table")) {
        std::vector<std::uint16_t> r;
        for (const auto &e : row) r.push_back(e.get<std::uint16_t>());
        table.push_back(std::move(r));
    }
    if (table.size() != size) throw io_error("rack table size mismatch");
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto &l : j["labels"]) labels.push_back(l.get<std::string>());
    std::string prov = j.value("provenance", std::string{});
    return Rack::validate(std::move(table), std::move(labels), std::move(prov));
}

Rack load_rack_file(const std::string &path) { return load_rack(read_json_file(path)); }

ojson rack_to_json(const Rack &X) {
    ojson j;
    j["size"] = X.size();
    j["table"] = X.table();
    j["labels"] = X.labels();
    j["provenance"] = X.provenance();
    return j;
}

std::pair<Rack, ScalarCocycle> load_cocycle_file(const std::string &path) {
    ojson j = read_json_file(path);
    Rack X = j.at("rack").is_string() ? load_rack_file(j["rack"].get<std::string>())
                                      : load_rack(j.at("rack"));
    ScalarCocycle q;
    q.m = j.at("m").get<unsigned>();
    for (const auto &row : j.at("exponents")) {
        std::vector<std::uint32_t> r;
        for (const auto &e : row) r.push_back(e.get<std::uint32_t>() % q.m);
        q.exp.push_back(std::move(r));
    }
    if (q.exp.size() != X.size()) throw io_error("cocycle exponent matrix size mismatch");
    return {std::move(X), std::move(q)};
}

ojson cocycle_to_json(const ScalarCocycle &q) {
    ojson j;
    j["m"] = q.m;
    j["exponents"] = q.exp;
    return j;
}

ojson verdict_to_json(const TypeDVerdict &v) {
    ojson j;
    j["status"] = to_string(v.status);
    if (v.witness) {
        ojson w;
        w["r"] = v.witness->r;
        w["s"] = v.witness->s;
        w["closure_size"] = v.witness->closure_size;
        w["orbit_sizes"] = v.witness->orbit_sizes;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["method"] = v.method;
    return j;
}

ojson homology_to_json(const HomologyResult &h) {
    ojson j;
    j["degree"] = h.degree;
    j["betti"] = h.betti;
    j["torsion"] = h.torsion;
    return j;
}

ojson group_structure_to_json(const AbelianGroup &g) {
    ojson j;
    j["free_rank"] = g.free_rank;
    j["cyclic"] = g.prime_power_cyclic;
    j["pretty"] = g.to_string();
    return j;
}

ojson read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    ojson j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        throw io_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string &path, const ojson &j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

}  // namespace rackforge
