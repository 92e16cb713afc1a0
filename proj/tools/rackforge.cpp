// rackforge — exact computations with finite racks: constructions, type-D
// decisions, homology/cohomology, cocycle spaces, and Nichols-algebra
// Hilbert series.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "rackforge/caps.hpp"
#include "rackforge/homology.hpp"
#include "rackforge/json_io.hpp"
#include "rackforge/nichols.hpp"
#include "rackforge/paper.hpp"
#include "rackforge/thr.hpp"
#include "rackforge/typed.hpp"

using namespace rackforge;

namespace {

constexpr const char *kVersion = "rackforge 1.0.0";

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const cap_exceeded *>(&e)) return 3;
    return 2;
}

struct ReportEnv {
    std::string command;
    std::vector<std::string> input_files;
    bool timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    ojson wrap(ojson payload) const {
        ojson j;
        j["schema"] = 1;
        j["engine"] = kVersion;
        j["command"] = command;
        ojson digests = ojson::object();
        for (const auto &f : input_files) {
            std::ifstream in(f, std::ios::binary);
            std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            digests[f] = fnv1a_hex(bytes);
        }
        j["inputs"] = digests;
        j["payload"] = std::move(payload);
        if (timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            j["timing_ms"] = ms;
        }
        return j;
    }
};

void emit(const ReportEnv &env, ojson payload, const std::string &out_path) {
    ojson j = env.wrap(std::move(payload));
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

Rack rack_from_build_args(const std::string &conj, const std::string &matrix,
                          const std::string &affine, const std::string &thr_file,
                          const std::string &rep, unsigned t, const std::string &ell,
                          const std::string &theta, std::vector<std::string> &inputs) {
    if (!conj.empty()) {
        inputs.push_back(conj);
        PermGroup G = load_group_file(conj);
        return from_conjugacy_class(G, Permutation::from_cycles(rep, G.degree()));
    }
    if (!matrix.empty()) {
        inputs.push_back(matrix);
        PermGroup G = load_matrix_group(read_json_file(matrix));
        return from_conjugacy_class(G, Permutation::from_cycles(rep, G.degree()));
    }
    if (!affine.empty()) {
        auto comma = affine.find(',');
        if (comma == std::string::npos) throw io_error("--affine wants 'm,t'");
        return affine_rack(std::stoul(affine.substr(0, comma)), std::stoll(affine.substr(comma + 1)));
    }
    if (!thr_file.empty()) {
        inputs.push_back(thr_file);
        PermGroup L = load_group_file(thr_file);
        THRSpec s;
        s.L = &L;
        s.t = t;
        s.ell = ell == "e" || ell.empty() ? Permutation::identity(L.degree())
                                          : Permutation::from_cycles(ell, L.degree());
        s.theta = theta.empty() || theta == "id"
                      ? GroupAutomorphism::identity(L)
                      : automorphism_from_conjugator(L, Permutation::from_cycles(theta, L.degree()));
        return build_thr(s);
    }
    throw io_error("one of --conj/--matrix/--affine/--thr is required");
}

ScalarCocycle cocycle_from_arg(const Rack &X, const std::string &spec) {
    if (spec.rfind("const:", 0) == 0) {
        std::string v = spec.substr(6);
        if (v == "-1") return ScalarCocycle::constant(X.size(), 2, 1);
        if (v == "1" || v == "+1") return ScalarCocycle::constant(X.size(), 1, 0);
        throw io_error("const cocycle must be 1 or -1");
    }
    if (spec == "chi") {
        // recover the symmetric-group size from the transposition count
        unsigned n = X.size();
        unsigned m_sym = static_cast<unsigned>((1 + std::sqrt(1.0 + 8.0 * n)) / 2 + 0.5);
        if (m_sym * (m_sym - 1) / 2 != n)
            throw io_error("chi needs the transposition rack O^m_2");
        ChiData chi = chi_cocycle(m_sym);
        auto iso = is_isomorphic(X, chi.rack);
        if (!iso) throw io_error("chi needs the transposition rack O^m_2");
        // transport χ along the isomorphism
        ScalarCocycle q;
        q.m = 2;
        q.exp.assign(n, std::vector<std::uint32_t>(n, 0));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) q.exp[i][j] = chi.q.exp[(*iso)[i]][(*iso)[j]];
        return q;
    }
    throw io_error("cocycle spec must be const:1, const:-1, chi, or a cocycle file");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{std::string(kVersion) + " — exact rack computations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    bool timing = false;
    unsigned jobs = 1;
    app.add_option("-o,--output", out_path, "write the report to a file");
    app.add_flag("--timing", timing, "include timing in the report (breaks byte-reproducibility)");
    app.add_option("--jobs", jobs, "data-parallel scan width (output independent of it)");

    // build
    auto *build = app.add_subcommand("build", "construct and validate a rack file");
    std::string b_conj, b_matrix, b_affine, b_thr, b_rep, b_ell, b_theta;
    unsigned b_t = 2;
    build->add_option("--conj", b_conj, "group JSON file; class rack of --rep");
    build->add_option("--matrix", b_matrix, "matrix-group JSON file; class rack of --rep");
    build->add_option("--affine", b_affine, "affine rack 'm,t'");
    build->add_option("--thr", b_thr, "group JSON file for a twisted homogeneous rack");
    build->add_option("--rep", b_rep, "class representative in cycle notation");
    build->add_option("--t", b_t, "THR copies");
    build->add_option("--ell", b_ell, "THR parameter ell ('e' for identity)");
    build->add_option("--theta", b_theta, "THR twist: 'id' or a conjugator cycle string");

    // typed
    auto *typed = app.add_subcommand("typed", "type-D verdict for a rack or class");
    std::string t_rack, t_group, t_rep;
    bool t_strict = false;
    typed->add_option("rack", t_rack, "rack JSON file");
    typed->add_option("--conj", t_group, "group JSON file (with --rep)");
    typed->add_option("--rep", t_rep, "class representative");
    typed->add_flag("--strict", t_strict, "exit 4 on INCONCLUSIVE");

    // h2
    auto *h2 = app.add_subcommand("h2", "rack homology via Smith normal form");
    std::string h_rack;
    unsigned h_degree = 2;
    h2->add_option("rack", h_rack, "rack JSON file")->required();
    h2->add_option("--degree", h_degree, "homology degree (default 2)");

    // cocycles
    auto *coc = app.add_subcommand("cocycles", "Z²/B²/H² over the m-th roots of unity");
    std::string c_rack;
    unsigned c_m = 2;
    coc->add_option("rack", c_rack, "rack JSON file")->required();
    coc->add_option("--m", c_m, "root order");

    // nichols
    auto *nic = app.add_subcommand("nichols", "Nichols-algebra Hilbert series");
    std::string n_rack, n_cocycle = "const:-1";
    unsigned n_maxdeg = 20;
    bool n_long = false;
    nic->add_option("rack", n_rack, "rack JSON file")->required();
    nic->add_option("--cocycle", n_cocycle, "const:1 | const:-1 | chi | cocycle file");
    nic->add_option("--max-degree", n_maxdeg, "degree bound");
    nic->add_flag("--long", n_long, "allow long-running sizes");

    // thr
    auto *thr = app.add_subcommand("thr", "twisted homogeneous rack criteria");
    std::string r_spec;
    bool r_strict = false;
    thr->add_option("spec", r_spec, "THR spec JSON file")->required();
    thr->add_flag("--strict", r_strict, "exit 4 on INCONCLUSIVE");

    // verify-paper
    auto *verify = app.add_subcommand("verify-paper", "run the bundled expectation tables");
    std::string v_dir = "expectations";
    bool v_long = false, v_big = false;
    verify->add_option("--expectations", v_dir, "expectations directory");
    verify->add_flag("--long", v_long, "include long-running rows");
    verify->add_flag("--big", v_big, "include the large cohomology class");

    CLI11_PARSE(app, argc, argv);

    ReportEnv env;
    env.timing = timing;
    // echo the invocation without the parallelism knob: reports must be
    // byte-identical across --jobs settings
    env.command = "rackforge";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--jobs" || a == "-j") { ++i; continue; }
        if (a.rfind("--jobs=", 0) == 0) continue;
        env.command += " " + a;
    }
    if (jobs) caps().jobs = jobs;

    try {
        if (build->parsed()) {
            Rack X = rack_from_build_args(b_conj, b_matrix, b_affine, b_thr, b_rep, b_t, b_ell,
                                          b_theta, env.input_files);
            // a rack file on disk, the full report on stdout
            if (!out_path.empty()) {
                write_json_file(out_path, rack_to_json(X));
                std::cout << env.wrap(rack_to_json(X)).dump(2) << "\n";
            } else {
                emit(env, rack_to_json(X), out_path);
            }
        } else if (typed->parsed()) {
            TypeDVerdict v;
            if (!t_rack.empty()) {
                env.input_files.push_back(t_rack);
                Rack X = load_rack_file(t_rack);
                v = is_type_D_rack(X);
            } else if (!t_group.empty()) {
                env.input_files.push_back(t_group);
                PermGroup G = load_group_file(t_group);
                v = is_type_D_class(G, Permutation::from_cycles(t_rep, G.degree()));
            } else {
                throw io_error("typed wants a rack file or --conj/--rep");
            }
            emit(env, verdict_to_json(v), out_path);
            if (t_strict && v.status == TypeDStatus::INCONCLUSIVE) return 4;
        } else if (h2->parsed()) {
            env.input_files.push_back(h_rack);
            Rack X = load_rack_file(h_rack);
            emit(env, homology_to_json(rack_homology(X, h_degree)), out_path);
        } else if (coc->parsed()) {
            env.input_files.push_back(c_rack);
            Rack X = load_rack_file(c_rack);
            CocycleSpace cs = cocycle_space(X, c_m);
            ojson payload;
            payload["m"] = c_m;
            payload["z2"] = group_structure_to_json(cs.z2);
            payload["b2"] = group_structure_to_json(cs.b2);
            payload["h2"] = group_structure_to_json(cs.h2);
            payload["reps_complete"] = cs.reps_complete;
            ojson reps = ojson::array();
            for (const auto &q : cs.h2_reps) reps.push_back(cocycle_to_json(q));
            payload["h2_representatives"] = reps;
            emit(env, payload, out_path);
        } else if (nic->parsed()) {
            env.input_files.push_back(n_rack);
            Rack X = load_rack_file(n_rack);
            ScalarCocycle q;
            if (n_cocycle.rfind("const:", 0) == 0 || n_cocycle == "chi")
                q = cocycle_from_arg(X, n_cocycle);
            else {
                auto [rx, qq] = load_cocycle_file(n_cocycle);
                if (!(rx == X)) throw io_error("cocycle file is for a different rack");
                q = qq;
            }
            if (!is_cocycle(X, q)) throw io_error("exponent matrix violates the cocycle law");
            if (!n_long && static_cast<std::uint64_t>(X.size()) * X.size() > 2500)
                throw cap_exceeded("rack too large without --long");
            BraidedSpace V{&X, q};
            NicholsReport rep = hilbert_series(V, n_maxdeg);
            ojson payload;
            payload["dims"] = rep.dims;
            payload["finite"] = rep.finite;
            payload["truncated"] = rep.truncated;
            if (rep.finite) {
                payload["total"] = rep.total;
                payload["top"] = rep.top;
            }
            emit(env, payload, out_path);
        } else if (thr->parsed()) {
            env.input_files.push_back(r_spec);
            ojson j = read_json_file(r_spec);
            PermGroup L = j.at("L").is_string() ? load_group_file(j["L"].get<std::string>())
                                                : load_group(j.at("L"));
            THRSpec s;
            s.L = &L;
            s.t = j.at("t").get<unsigned>();
            std::string ell = j.at("ell").get<std::string>();
            s.ell = ell == "e" || ell.empty() ? Permutation::identity(L.degree())
                                              : Permutation::from_cycles(ell, L.degree());
            if (!j.contains("theta") || j["theta"].is_string())
                s.theta = GroupAutomorphism::identity(L);
            else
                s.theta = automorphism_from_conjugator(
                    L, Permutation::from_cycles(j["theta"].at("conjugator").get<std::string>(),
                                               L.degree()));
            TypeDVerdict v = thr_criteria(s);
            ojson payload = verdict_to_json(v);
            payload["class_size"] = thr_class_size(s);
            emit(env, payload, out_path);
            if (r_strict && v.status == TypeDStatus::INCONCLUSIVE) return 4;
        } else if (verify->parsed()) {
            auto results = run_verify_paper(v_dir, v_long, v_big);
            unsigned failed = 0;
            ojson rows = ojson::array();
            for (const auto &r : results) {
                ojson row;
                row["name"] = r.name;
                row["status"] = r.skipped ? "SKIP" : (r.ok ? "PASS" : "FAIL");
                row["detail"] = r.detail;
                rows.push_back(row);
                if (!r.skipped && !r.ok) ++failed;
                std::cerr << (r.skipped ? "[SKIP] " : (r.ok ? "[PASS] " : "[FAIL] ")) << r.name
                          << " — " << r.detail << "\n";
            }
            ojson payload;
            payload["rows"] = rows;
            payload["failed"] = failed;
            emit(env, payload, out_path);
            if (failed) return 1;
        }
    } catch (const rack_validation_error &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
