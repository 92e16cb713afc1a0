// Acceptance suite: one criterion per invocation (argv[1] = 1..8), printing
// a pass/fail line per criterion component and exiting nonzero on failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "rackforge/caps.hpp"
#include "rackforge/homology.hpp"
#include "rackforge/json_io.hpp"
#include "rackforge/nichols.hpp"
#include "rackforge/paper.hpp"
#include "rackforge/thr.hpp"
#include "rackforge/typed.hpp"

using namespace rackforge;

namespace {

int g_failures = 0;

void line(const std::string &name, bool ok, const std::string &detail = {}) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    std::cout.flush();
    if (!ok) ++g_failures;
}

void skip(const std::string &name, const std::string &why) {
    std::cout << "[SKIP] " << name << " — " << why << "\n";
}

Permutation P(const std::string &s, unsigned deg) { return Permutation::from_cycles(s, deg); }

const char *kExpectations = "expectations";

// ---------- criterion 1: homology golden suite ----------
void criterion1() {
    for (const auto &r : run_table1_homology(kExpectations)) line(r.name, r.ok, r.detail);
}

// ---------- criterion 2: cohomology cross-checks ----------
void criterion2() {
    ojson spec = read_json_file(std::string(kExpectations) + "/table1_homology.json");
    for (const auto &row : spec.at("rows")) {
        std::string name = "cross-check " + row.at("name").get<std::string>();
        PermGroup G = named_group(row.at("group").get<std::string>());
        Rack X = from_conjugacy_class(G, P(row.at("rep").get<std::string>(), G.degree()));
        HomologyResult h = rack_homology(X, 2);
        bool ok = true;
        std::ostringstream d;
        for (unsigned m : {2u, 3u, 6u}) {
            auto cs = cocycle_space(X, m);
            auto dual = h2_dual(h, m);
            if (cs.h2.order_with(m) != dual.order(m)) ok = false;
            d << "m=" << m << ":" << cs.h2.order_with(m) << "=" << dual.order(m) << " ";
        }
        line(name, ok, d.str());
    }
    for (const auto &r : run_prop_cohomology(kExpectations, true)) line(r.name, r.ok, r.detail);
}

// ---------- criterion 3 & 4: Nichols dimensions and engine agreement ----------
void criterion3(bool long_mode) {
    for (const auto &r : run_table6_nichols(kExpectations, long_mode)) {
        if (r.skipped) skip(r.name, r.detail);
        else line(r.name, r.ok, r.detail);
    }
}

void criterion4() {
    ojson spec = read_json_file(std::string(kExpectations) + "/table6_nichols.json");
    for (const auto &row : spec.at("rows")) {
        if (row.value("scope", "ci") != "ci") continue;
        std::string cocycle = row.at("cocycle").get<std::string>();
        Rack rack = [&]() -> Rack {
            if (cocycle == "chi") return chi_cocycle(row.at("chi_m").get<unsigned>()).rack;
            std::string rs = row.at("rack").get<std::string>();
            if (rs == "D3") return affine_rack(3, 2);
            if (rs == "T")
                return from_conjugacy_class(named_group("A4"), P("(0 1 2)", 4));
            if (rs.rfind("affine(", 0) == 0) {
                auto comma = rs.find(',');
                return affine_rack(std::stoul(rs.substr(7, comma - 7)),
                                   std::stoll(rs.substr(comma + 1, rs.size() - comma - 2)));
            }
            auto comma = rs.find(',');
            PermGroup G = named_group(rs.substr(5, comma - 5));
            return from_conjugacy_class(
                G, P(rs.substr(comma + 1, rs.size() - comma - 2), G.degree()));
        }();
        ScalarCocycle q = cocycle == "chi" ? chi_cocycle(row.at("chi_m").get<unsigned>()).q
                                           : ScalarCocycle::constant(rack.size(), 2, 1);
        BraidedSpace V{&rack, q};
        auto rep = hilbert_series(V, 5);
        bool ok = true;
        std::ostringstream d;
        for (unsigned n = 2; n <= 4; ++n) {
            unsigned long engine = n < rep.dims.size() ? rep.dims[n] : 0;
            unsigned long oracle = symmetrizer_rank(V, n);
            if (engine != oracle) ok = false;
            d << "deg" << n << ":" << engine << "=" << oracle << " ";
        }
        line("engine agreement " + row.at("name").get<std::string>(), ok, d.str());
    }
}

// ---------- criterion 5: type-D verdict suite ----------
void criterion5() {
    {
        PermGroup S5 = named_group("S5");
        auto v = is_type_D_class(S5, P("(0 1 2 3)", 5));
        bool ok = v.status == TypeDStatus::TYPE_D &&
                  verify_witness_rack(from_conjugacy_class(S5, P("(0 1 2 3)", 5)), *v.witness);
        line("S5 4-cycles TYPE_D with re-verified witness", ok);

        auto v23 = is_type_D_class(S5, P("(0 1)(2 3 4)", 5));
        Rack X23 = from_conjugacy_class(S5, P("(0 1)(2 3 4)", 5));
        line("S5 type (2,3) NOT_TYPE_D and type M",
             v23.status == TypeDStatus::NOT_TYPE_D && is_type_M(X23));
    }
    {
        PermGroup A7 = named_group("A7");
        auto v = is_type_D_class(A7, P("(0 1)(2 3)", 7));
        bool ok = v.status == TypeDStatus::TYPE_D &&
                  verify_witness_rack(from_conjugacy_class(A7, P("(0 1)(2 3)", 7)), *v.witness);
        line("A7 type (1^3,2^2) TYPE_D with re-verified witness", ok);
    }
    for (const auto &r : run_symmetric_sweep(kExpectations)) line(r.name, r.ok, r.detail);
    for (const auto &r : run_table2_sporadic(kExpectations)) {
        if (r.skipped) skip(r.name, r.detail);
        else line(r.name, r.ok, r.detail);
    }
}

// ---------- criterion 6: THR suite ----------
void criterion6() {
    PermGroup A5 = named_group("A5");
    {
        THRSpec s;
        s.L = &A5;
        s.t = 2;
        s.theta = GroupAutomorphism::identity(A5);
        s.ell = Permutation::identity(5);
        Rack X = build_thr(s);
        auto v = is_type_D_rack(X);
        line("C_e of (A5,t=2,id): size 60, exhaustive NOT_TYPE_D",
             X.size() == 60 && v.status == TypeDStatus::NOT_TYPE_D);
    }
    {
        THRSpec s;
        s.L = &A5;
        s.t = 3;
        s.theta = GroupAutomorphism::identity(A5);
        s.ell = P("(0 1 2 3 4)", 5);
        auto rules = thr_criteria(s);
        bool rule_ok = rules.status == TypeDStatus::TYPE_D && rules.method == "thr_quasi_real";
        line("C_l (A5,t=3,5-cycle): quasi-real rule fires", rule_ok);

        // generic confirmation on the conjugacy-class realization in L^3⋊⟨u⟩
        std::vector<Permutation> gens;
        for (const auto &g : A5.generators()) {
            for (unsigned block = 0; block < 1; ++block) {
                std::vector<std::uint16_t> img(15);
                for (unsigned i = 0; i < 15; ++i) img[i] = static_cast<std::uint16_t>(i);
                for (unsigned i = 0; i < 5; ++i) img[i] = g(i);
                gens.push_back(Permutation(std::move(img)));
            }
        }
        {
            std::vector<std::uint16_t> shift(15);
            for (unsigned i = 0; i < 15; ++i) shift[i] = static_cast<std::uint16_t>((i + 5) % 15);
            gens.push_back(Permutation(std::move(shift)));
        }
        PermGroup W(gens);
        bool order_ok = W.order() == 648000ULL;  // |A5|³ · 3
        // the element (e,e,ℓ)·u: first the block shift, then ℓ on block 2
        std::vector<std::uint16_t> img(15);
        for (unsigned i = 0; i < 15; ++i) img[i] = static_cast<std::uint16_t>((i + 5) % 15);
        Permutation ell5 = P("(0 1 2 3 4)", 5);
        for (unsigned i = 5; i < 10; ++i) img[i] = static_cast<std::uint16_t>(10 + ell5(i - 5));
        Permutation seed{std::vector<std::uint16_t>(img)};
        auto cls = conjugacy_class(W, seed);
        bool size_ok = cls.size() == 43200ULL;  // |L|²·|O_ℓ| = 3600·12
        auto v = is_type_D_class(W, seed);
        line("C_l (A5,t=3,5-cycle): generic check on the class realization",
             order_ok && size_ok && v.status == TypeDStatus::TYPE_D,
             "group 648000=" + std::to_string(W.order()) + ", class 43200=" +
                 std::to_string(cls.size()));
    }
    {
        THRSpec s;
        s.L = &A5;
        s.t = 3;
        s.theta = GroupAutomorphism::identity(A5);
        s.ell = Permutation::identity(5);
        auto rules = thr_criteria(s);
        bool ok = rules.status == TypeDStatus::TYPE_D && rules.method == "thr_gcd_odd_prime";
        // soundness on the 3600-element rack, from the rule's own confirmation
        ok = ok && rules.witness.has_value();
        line("C_e (A5,t=3): odd-prime rule, confirmed on the 3600-element rack", ok);
    }
}

// ---------- criterion 7: property suites ----------
void criterion7() {
    // rack axioms on every construction: validate() runs inside each builder;
    // re-run explicitly across a construction zoo
    {
        bool ok = true;
        PermGroup S4 = named_group("S4");
        PermGroup A4 = named_group("A4");
        auto u = automorphism_from_conjugator(A4, P("(0 1)", 4));
        std::vector<Rack> zoo;
        zoo.push_back(affine_rack(3, 2));
        zoo.push_back(affine_rack(5, 2));
        zoo.push_back(affine_rack_fq(4, 2));
        zoo.push_back(from_conjugacy_class(S4, P("(0 1)", 4)));
        zoo.push_back(from_twisted_class(A4, u, Permutation::identity(4)));
        zoo.push_back(power_rack(affine_rack(5, 2), -1));
        zoo.push_back(product_rack(affine_rack(3, 2), affine_rack(3, 2)));
        zoo.push_back(torus_rack(2, 5, 4).realized);
        {
            THRSpec s;
            PermGroup A5 = named_group("A5");
            s.L = &A5;
            s.t = 2;
            s.theta = GroupAutomorphism::identity(A5);
            s.ell = Permutation::identity(5);
            zoo.push_back(build_thr(s));
        }
        for (const auto &X : zoo) {
            try {
                Rack::validate(X.table(), X.labels(), X.provenance());
            } catch (...) {
                ok = false;
            }
        }
        line("rack axioms re-checked on every construction", ok);
    }
    // braid equation for every braided space used in the acceptance runs
    {
        bool ok = true;
        auto chi = chi_cocycle(4);
        std::vector<BraidedSpace> spaces;
        Rack d3 = affine_rack(3, 2);
        Rack a52 = affine_rack(5, 2);
        PermGroup S4 = named_group("S4");
        Rack o42 = from_conjugacy_class(S4, P("(0 1)", 4));
        ScalarCocycle m1_3 = ScalarCocycle::constant(3, 2, 1);
        ScalarCocycle m1_5 = ScalarCocycle::constant(5, 2, 1);
        ScalarCocycle m1_6 = ScalarCocycle::constant(6, 2, 1);
        try {
            braiding(BraidedSpace{&d3, m1_3});
            braiding(BraidedSpace{&a52, m1_5});
            braiding(BraidedSpace{&o42, m1_6});
            braiding(BraidedSpace{&chi.rack, chi.q});
        } catch (...) {
            ok = false;
        }
        line("braid equation holds for every braided space", ok);
    }
    // ∂∘∂ = 0
    {
        bool ok = true;
        for (const Rack &X : {affine_rack(3, 2), affine_rack(5, 3),
                              from_conjugacy_class(named_group("A4"), P("(0 1 2)", 4))}) {
            for (unsigned n = 2; n <= 3; ++n) {
                IntMatrix a = boundary_matrix(X, n);
                IntMatrix b = boundary_matrix(X, n + 1);
                for (std::size_t col = 0; col < b.cols(); ++col)
                    for (std::size_t r = 0; r < a.rows(); ++r) {
                        mpz_class acc = 0;
                        for (const auto &[mid, w] : a.row(r)) acc += w * b.get(mid, col);
                        if (acc != 0) ok = false;
                    }
            }
        }
        line("boundary squared vanishes", ok);
    }
    // orbit–stabilizer on every class used by the suites
    {
        bool ok = true;
        for (const char *gname : {"S4", "S5", "A5", "A6"}) {
            PermGroup G = named_group(gname);
            for (std::uint32_t i = 0; i < G.order(); i += 11) {
                auto x = G.element(i);
                if (conjugacy_class(G, x).size() * centralizer(G, x).order() != G.order()) ok = false;
            }
        }
        line("orbit–stabilizer on desk-scale classes", ok);
    }
    // gauge and twist preserve the cocycle law
    {
        bool ok = true;
        PermGroup S4 = named_group("S4");
        Rack X = from_conjugacy_class(S4, P("(0 1)", 4));
        auto q = ScalarCocycle::constant(X.size(), 2, 1);
        GaugeMap g{2, {1, 0, 1, 1, 0, 1}};
        ok = ok && is_cocycle(X, gauge_transform(X, q, g));
        auto space = twist_condition_space(X, 2);
        for (const auto &v : space) {
            std::vector<std::vector<std::uint32_t>> phi(6, std::vector<std::uint32_t>(6, 0));
            for (unsigned i = 0; i < 6; ++i)
                for (unsigned j = 0; j < 6; ++j) phi[i][j] = v[i * 6 + j];
            ok = ok && is_cocycle(X, twist(X, q, phi));
        }
        line("gauge and twist preserve the cocycle law", ok);
    }
    // Poincaré twist invariance on O^4_2 up to degree 6
    {
        PermGroup S4 = named_group("S4");
        Rack X = from_conjugacy_class(S4, P("(0 1)", 4));
        BraidedSpace V{&X, ScalarCocycle::constant(6, 2, 1)};
        auto space = twist_condition_space(X, 2);
        bool ok = false;
        for (const auto &v : space) {
            std::vector<std::vector<std::uint32_t>> phi(6, std::vector<std::uint32_t>(6, 0));
            for (unsigned i = 0; i < 6; ++i)
                for (unsigned j = 0; j < 6; ++j) phi[i][j] = v[i * 6 + j];
            if (!(twist(X, V.q, phi).exp == V.q.exp)) {
                ok = poincare_twist_check(V, phi, 6);
                break;
            }
        }
        line("Poincaré series twist-invariant on O^4_2 up to degree 6", ok);
    }
    // duality round trips
    {
        bool ok = true;
        for (const Rack &X : {affine_rack(5, 2), affine_rack(7, 3)}) {
            auto q = ScalarCocycle::constant(X.size(), 2, 1);
            auto [d1, q1] = dual_cocycle(X, q);
            auto [d2, q2] = dual_cocycle(d1, q1);
            ok = ok && d2 == X && q2.exp == q.exp && is_cocycle(d1, q1);
        }
        line("duality round-trips", ok);
    }
}

// ---------- criterion 8: determinism ----------
void criterion8() {
    const char *binenv = std::getenv("RACKFORGE_BIN");
    if (!binenv) {
        line("determinism (RACKFORGE_BIN not set)", false, "binary path missing");
        return;
    }
    auto capture = [&](const std::string &args) {
        std::string cmd = std::string(binenv) + " " + args + " 2>/dev/null";
        FILE *p = popen(cmd.c_str(), "r");
        std::string out;
        char buf[4096];
        std::size_t n;
        while (p && (n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        if (p) pclose(p);
        return out;
    };
    {
        std::string args = "typed --conj data/S5.json --rep \"(0 1 2 3)\"";
        auto a = capture(args), b = capture(args), c = capture(args + " --jobs 4");
        line("typed reports byte-identical across repeats and --jobs", !a.empty() && a == b && a == c);
    }
    {
        std::string args = "h2 /tmp/rackforge_acc_rack.json --degree 2";
        capture("build --conj data/S4.json --rep \"(0 1)\" -o /tmp/rackforge_acc_rack.json");
        auto a = capture(args), b = capture(args);
        line("h2 reports byte-identical across repeats", !a.empty() && a == b);
    }
    {
        std::string args = "cocycles /tmp/rackforge_acc_rack.json --m 6";
        auto a = capture(args), b = capture(args), c = capture(args + " --jobs 2");
        line("cocycles reports byte-identical across repeats and --jobs",
             !a.empty() && a == b && a == c);
    }
    {
        // classes with >= 64 elements take the parallel scan path
        std::string pos = "typed --conj data/S6.json --rep \"(0 1)(2 3 4)\"";
        auto a = capture(pos + " --jobs 1"), b = capture(pos + " --jobs 5");
        std::string neg = "typed --conj data/M11.json --rep \"(0 2 8 10 9 6 1 3)(4 7)\"";
        auto c = capture(neg + " --jobs 1"), d = capture(neg + " --jobs 3");
        bool not_type_d = d.find("NOT_TYPE_D") != std::string::npos;
        line("parallel scans match sequential on positive and exhaustive-negative classes",
             !a.empty() && a == b && !c.empty() && c == d && not_type_d);
    }
}

}  // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion 1..8> [--long]\n";
        return 2;
    }
    int c = std::atoi(argv[1]);
    bool long_mode = argc > 2 && std::string(argv[2]) == "--long";
    std::cout << "=== acceptance criterion " << c << " ===\n";
    switch (c) {
        case 1: criterion1(); break;
        case 2: criterion2(); break;
        case 3: criterion3(long_mode); break;
        case 4: criterion4(); break;
        case 5: criterion5(); break;
        case 6: criterion6(); break;
        case 7: criterion7(); break;
        case 8: criterion8(); break;
        default:
            std::cerr << "unknown criterion\n";
            return 2;
    }
    if (g_failures) {
        std::cout << "criterion " << c << ": FAIL (" << g_failures << " failing checks)\n";
        return 1;
    }
    std::cout << "criterion " << c << ": PASS\n";
    return 0;
}
