#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rackforge/caps.hpp"
#include "rackforge/paper.hpp"
#include "rackforge/rack.hpp"

using namespace rackforge;

namespace {
Permutation P(const std::string &s, unsigned deg) { return Permutation::from_cycles(s, deg); }

Rack d3() { return affine_rack(3, 2); }  // dihedral rack on Z/3 (T = −1)
}

TEST_CASE("validate accepts conjugation tables and names violations") {
    PermGroup S3 = named_group("S3");
    Rack X = from_conjugacy_class(S3, P("(0 1)", 3));
    CHECK(X.size() == 3);

    // constant first translation: not a bijection
    std::vector<std::vector<std::uint16_t>> bad{{0, 0, 0}, {0, 1, 2}, {0, 1, 2}};
    CHECK_THROWS_AS(Rack::validate(bad), rack_validation_error);
    try {
        Rack::validate(bad);
    } catch (const rack_validation_error &e) {
        CHECK(e.kind == rack_validation_error::Kind::non_bijective);
        CHECK(e.x == 0);
    }

    // permutation rack with every translation the same 3-cycle: quandle fails
    std::vector<std::vector<std::uint16_t>> perm_rack(3, {1, 2, 0});
    try {
        Rack::validate(perm_rack);
        CHECK(false);
    } catch (const rack_validation_error &e) {
        CHECK(e.kind == rack_validation_error::Kind::quandle);
    }
}

TEST_CASE("class racks: D3 and the tetrahedral rack") {
    PermGroup S3 = named_group("S3");
    Rack X = from_conjugacy_class(S3, P("(0 1)", 3));
    CHECK(is_isomorphic(X, d3()).has_value());

    PermGroup A4 = named_group("A4");
    Rack T = from_conjugacy_class(A4, P("(0 1 2)", 4));
    CHECK(T.size() == 4);

    PermGroup S5 = named_group("S5");
    Rack E = from_conjugacy_class(S5, Permutation::identity(5));
    CHECK(E.size() == 1);
}

TEST_CASE("twisted classes reduce to plain classes for u = id") {
    PermGroup A4 = named_group("A4");
    auto u = GroupAutomorphism::identity(A4);
    Rack X = from_twisted_class(A4, u, P("(0 1 2)", 4));
    Rack Y = from_conjugacy_class(A4, P("(0 1 2)", 4));
    CHECK(X.size() == Y.size());
    CHECK(is_isomorphic(X, Y).has_value());

    Rack Z = from_twisted_class(A4, u, Permutation::identity(4));
    CHECK(Z.size() == 1);
}

TEST_CASE("twisted class by an outer automorphism matches the S4 class") {
    PermGroup A4 = named_group("A4");
    PermGroup S4 = named_group("S4");
    auto u = automorphism_from_conjugator(A4, P("(0 1)", 4));
    // orbit of e corresponds to the transpositions of S4 via y ↦ y·(0 1)
    Rack X = from_twisted_class(A4, u, Permutation::identity(4));
    Rack Y = from_conjugacy_class(S4, P("(0 1)", 4));
    CHECK(X.size() == 6);
    CHECK(is_isomorphic(X, Y).has_value());
    // an orbit through an odd-times-(0 1) element gives the 4-cycle class
    Rack X2 = from_twisted_class(A4, u, P("(0 2)(1 3)", 4));
    Rack Y2 = from_conjugacy_class(S4, P("(0 1 2 3)", 4));
    CHECK(X2.size() == 6);
    CHECK(is_isomorphic(X2, Y2).has_value());
}

TEST_CASE("affine racks") {
    Rack X = affine_rack(5, 2);
    CHECK(X.op(0, 1) == 2);  // (1−2)·0 + 2·1
    CHECK(is_isomorphic(d3(), from_conjugacy_class(named_group("S3"), P("(0 1)", 3))).has_value());
    Rack F4 = affine_rack_fq(4, 2);  // multiplication by the generator of F4
    CHECK(F4.size() == 4);
    CHECK_THROWS(affine_rack(4, 2));  // 2 not invertible mod 4
}

TEST_CASE("power racks") {
    Rack X = affine_rack(5, 2);
    CHECK(power_rack(X, 1) == X);
    CHECK(power_rack(d3(), -1) == d3());
    CHECK(power_rack(X, -1) == affine_rack(5, 3));  // 2·3 ≡ 1 (mod 5)
    // power composition law on tables
    CHECK(power_rack(power_rack(X, 2), 2) == power_rack(X, 4));
}

TEST_CASE("product racks") {
    Rack X = d3();
    Rack one = from_conjugacy_class(named_group("S3"), Permutation::identity(3));
    CHECK(is_isomorphic(product_rack(one, X), X).has_value());
    Rack XX = product_rack(X, X);
    CHECK(XX.size() == 9);
    CHECK(orbit_decomposition(XX).size() == 1);  // product of indecomposables here
}

TEST_CASE("subrack closure") {
    Rack X = d3();
    auto single = subrack_closure(X, {1});
    CHECK(single.members == std::vector<std::uint16_t>{1});

    // two non-commuting transpositions of S4 close into a 3-element subrack
    PermGroup S4 = named_group("S4");
    Rack O42 = from_conjugacy_class(S4, P("(0 1)", 4));
    auto cls = conjugacy_class(S4, P("(0 1)", 4));
    unsigned a = 0, b = 0;
    for (unsigned j = 0; j < cls.size(); ++j)
        if (conjugate(cls[0], cls[j]) != cls[j] && j != 0) { b = j; break; }
    auto closure = subrack_closure(O42, {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)});
    CHECK(closure.members.size() == 3);

    // S5 class of type (2,3): every two-generated proper closure has ≤ 2 elements
    PermGroup S5 = named_group("S5");
    Rack X23 = from_conjugacy_class(S5, P("(0 1)(2 3 4)", 5));
    for (unsigned s = 1; s < X23.size(); ++s) {
        auto Y = subrack_closure(X23, {0, static_cast<std::uint16_t>(s)});
        CHECK((Y.members.size() == X23.size() || Y.members.size() <= 2));
    }
}

TEST_CASE("orbit decomposition and defect rank") {
    CHECK(orbit_decomposition(d3()).size() == 1);
    CHECK(defect_rank(d3()) == 1);
    Rack one = from_conjugacy_class(named_group("S3"), Permutation::identity(3));
    CHECK(defect_rank(one) == 1);

    // disjoint-union-like rack: the S5 class of 5-cycles splits into two
    // inner orbits (the two A5 classes)
    PermGroup S5 = named_group("S5");
    Rack X = from_conjugacy_class(S5, P("(0 1 2 3 4)", 5));
    CHECK(X.size() == 24);
    CHECK(orbit_decomposition(X).size() == 2);
    CHECK(defect_rank(X) == 2);
    // orbits are subracks and partition X
    auto orbits = orbit_decomposition(X);
    std::size_t total = 0;
    for (const auto &o : orbits) {
        total += o.size();
        CHECK_NOTHROW(restrict_rack(X, o));
    }
    CHECK(total == X.size());
}

TEST_CASE("inner groups") {
    PermGroup S4 = named_group("S4");
    Rack O42 = from_conjugacy_class(S4, P("(0 1)", 4));
    CHECK(inner_group(O42).order() == 24);

    PermGroup S5 = named_group("S5");
    Rack O52 = from_conjugacy_class(S5, P("(0 1)", 5));
    CHECK(inner_group(O52).order() == 120);

    Rack one = from_conjugacy_class(S4, Permutation::identity(4));
    CHECK(inner_group(one).order() == 1);
}

TEST_CASE("inner group order equals |C/Z(C)| for class racks") {
    // C = subgroup generated by the class
    for (auto [gname, rep] : std::vector<std::pair<const char *, const char *>>{
             {"S4", "(0 1)"}, {"A4", "(0 1 2)"}, {"S5", "(0 1)(2 3 4)"}}) {
        PermGroup G = named_group(gname);
        auto cls = conjugacy_class(G, P(rep, G.degree()));
        PermGroup C(cls);
        Rack X = from_conjugacy_class(G, P(rep, G.degree()));
        CHECK(inner_group(X).order() * group_center(C).size() == C.order());
    }
}

TEST_CASE("is_isomorphic distinguishes") {
    Rack triv3 = Rack::validate({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    CHECK(!is_isomorphic(d3(), triv3).has_value());
    CHECK(is_isomorphic(d3(), d3()).has_value());
}

TEST_CASE("subrack enumeration") {
    // affine(F5, 2): a = 2 generates F5^×, so proper subracks are singletons
    Rack X = affine_rack(5, 2);
    auto subs = enumerate_subracks(X, 5);
    std::size_t singletons = 0, whole = 0, other = 0;
    for (const auto &s : subs) {
        if (s.members.size() == 1) ++singletons;
        else if (s.members.size() == X.size()) ++whole;
        else ++other;
    }
    CHECK(singletons == 5);
    CHECK(whole == 1);
    CHECK(other == 0);

    Rack X7 = affine_rack(7, 3);
    for (const auto &s : enumerate_subracks(X7, 7))
        CHECK((s.members.size() == 1 || s.members.size() == 7));

    auto subs3 = enumerate_subracks(d3(), 3);
    CHECK(subs3.size() == 4);  // three singletons + the whole rack
}

TEST_CASE("abelian subracks") {
    PermGroup S4 = named_group("S4");
    Rack O42 = from_conjugacy_class(S4, P("(0 1)", 4));
    auto cliques = abelian_subracks(O42);
    bool has_pair = false;
    for (const auto &c : cliques) has_pair |= c.size() == 2;
    CHECK(has_pair);  // {(0 1),(2 3)} and friends

    for (const auto &c : abelian_subracks(affine_rack(5, 2))) CHECK(c.size() == 1);
    for (const auto &c : abelian_subracks(affine_rack(7, 3))) CHECK(c.size() == 1);

    Rack triv = Rack::validate({{0, 1}, {0, 1}});
    auto whole = abelian_subracks(triv);
    CHECK(whole.size() == 1);
    CHECK(whole[0].size() == 2);
}

TEST_CASE("torus racks and their affine models") {
    auto tr = torus_rack(2, 5, 4);  // a = −1 in F5
    CHECK(tr.realized.size() == 4);
    CHECK(is_isomorphic(tr.realized, tr.affine_model).has_value());
    CHECK(is_isomorphic(tr.realized, affine_rack(4, 3)).has_value());  // D4 = affine(Z/4, −1)

    auto tr3 = torus_rack(3, 4, 1);
    CHECK(tr3.realized.size() == 9);
    CHECK(is_isomorphic(tr3.realized, tr3.affine_model).has_value());
}

TEST_CASE("affine-model type-D certificate") {
    // g = −1 on Z/8, x = 1: 1 ∉ 2Z/8 and the alternating sum is 4 ≠ 0
    CHECK(affine_model_typeD_certificate({{-1}}, 8, {1}));
    CHECK(!affine_model_typeD_certificate({{-1}}, 8, {0}));   // 0 ∈ Im always
    CHECK(!affine_model_typeD_certificate({{1}}, 8, {1}));    // g = id
}

TEST_CASE("every construction passes validation re-checks") {
    // validate() already ran in each constructor; re-run on copies
    for (const Rack &X : {d3(), affine_rack(5, 2), affine_rack_fq(4, 2),
                          from_conjugacy_class(named_group("S4"), P("(0 1 2 3)", 4))}) {
        CHECK_NOTHROW(Rack::validate(X.table(), X.labels(), X.provenance()));
    }
}

TEST_CASE("products inherit decomposability from either factor") {
    PermGroup S5 = named_group("S5");
    Rack split = from_conjugacy_class(S5, P("(0 1 2 3 4)", 5));  // two inner orbits
    Rack prod = product_rack(affine_rack(3, 2), restrict_rack(split, orbit_decomposition(split)[0]));
    CHECK(orbit_decomposition(prod).size() == 1);  // both factors indecomposable here
    // limit sizes: pair the 24-element split rack with the singleton rack
    Rack one = Rack::validate({{0}});
    Rack prod2 = product_rack(split, one);
    CHECK(orbit_decomposition(prod2).size() == 2);
}

TEST_CASE("subrack closures are minimal closed supersets") {
    PermGroup S4 = named_group("S4");
    Rack X = from_conjugacy_class(S4, P("(0 1 2 3)", 4));
    auto Y = subrack_closure(X, {0, 1});
    // removing any non-seed element breaks closure
    for (auto drop : Y.members) {
        if (drop == 0 || drop == 1) continue;
        std::vector<std::uint16_t> rest;
        for (auto m : Y.members)
            if (m != drop) rest.push_back(m);
        bool closed = true;
        for (auto a : rest)
            for (auto b : rest)
                if (X.op(a, b) == drop || X.op_inv(a, b) == drop) closed = false;
        CHECK(!closed);
    }
}
