#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rackforge/caps.hpp"
#include "rackforge/cocycle.hpp"
#include "rackforge/homology.hpp"
#include "rackforge/paper.hpp"

using namespace rackforge;

namespace {
Permutation P(const std::string &s, unsigned deg) { return Permutation::from_cycles(s, deg); }

Rack o42() { return from_conjugacy_class(named_group("S4"), P("(0 1)", 4)); }

// independent brute-force gauge search for tiny racks
bool gauge_equivalent_brute(const Rack &X, const ScalarCocycle &q, const ScalarCocycle &qp) {
    const unsigned n = X.size(), m = q.m;
    std::vector<std::uint32_t> gamma(n, 0);
    for (;;) {
        GaugeMap g{m, gamma};
        if (gauge_transform(X, q, g).exp == qp.exp) return true;
        unsigned i = 0;
        while (i < n && ++gamma[i] == m) gamma[i++] = 0;
        if (i == n) return false;
    }
}
}

TEST_CASE("constants are cocycles; single-entry breaks are caught") {
    for (const Rack &X : {affine_rack(3, 2), o42()}) {
        for (unsigned m : {2u, 3u, 6u}) {
            auto q = ScalarCocycle::constant(X.size(), m, 1);
            CHECK(is_cocycle(X, q));
        }
    }
    auto q = ScalarCocycle::constant(3, 2, 1);
    q.exp[0][1] = 0;
    auto bad = cocycle_violation(affine_rack(3, 2), q);
    CHECK(bad.has_value());
}

TEST_CASE("chi cocycle on transposition racks") {
    auto chi = chi_cocycle(4);
    CHECK(chi.rack.size() == 6);
    CHECK(is_cocycle(chi.rack, chi.q));
    // σ = τ = (0 1): σ(0)=1 > σ(1)=0 → −1 on the diagonal
    for (unsigned i = 0; i < chi.rack.size(); ++i) CHECK(chi.q.exp[i][i] == 1);
    // σ = (2 3) fixes 0 and 1 → +1 against τ = (0 1)
    auto cls = conjugacy_class(named_group("S4"), P("(0 1)", 4));
    unsigned i23 = 0, i01 = 0;
    for (unsigned i = 0; i < cls.size(); ++i) {
        if (cls[i] == P("(2 3)", 4)) i23 = i;
        if (cls[i] == P("(0 1)", 4)) i01 = i;
    }
    CHECK(chi.q.exp[i23][i01] == 0);

    auto chi5 = chi_cocycle(5);
    CHECK(chi5.rack.size() == 10);
    CHECK(is_cocycle(chi5.rack, chi5.q));
}

TEST_CASE("gauge transforms") {
    Rack X = o42();
    auto q = ScalarCocycle::constant(X.size(), 6, 3);
    GaugeMap g{6, {1, 2, 3, 4, 5, 0}};
    auto qt = gauge_transform(X, q, g);
    CHECK(is_cocycle(X, qt));
    for (unsigned i = 0; i < X.size(); ++i) CHECK(qt.exp[i][i] == q.exp[i][i]);  // diagonal kept

    GaugeMap c{6, std::vector<std::uint32_t>(X.size(), 4)};
    CHECK(gauge_transform(X, q, c).exp == q.exp);  // constant gauge is a no-op

    // gauge of gauge composes to the pointwise sum
    GaugeMap g2{6, {5, 5, 0, 1, 2, 3}};
    auto once = gauge_transform(X, gauge_transform(X, q, g), g2);
    GaugeMap sum{6, {}};
    for (unsigned i = 0; i < X.size(); ++i) sum.gamma.push_back((g.gamma[i] + g2.gamma[i]) % 6);
    CHECK(once.exp == gauge_transform(X, q, sum).exp);
}

TEST_CASE("gauge equivalence solver vs brute force") {
    Rack X = affine_rack(3, 2);
    auto q = ScalarCocycle::constant(3, 4, 1);
    GaugeMap g{4, {0, 3, 1}};
    auto qt = gauge_transform(X, q, g);
    auto found = are_gauge_equivalent(X, q, qt);
    CHECK(found.has_value());
    CHECK(gauge_equivalent_brute(X, q, qt));

    // inequivalent: different diagonal
    auto q2 = ScalarCocycle::constant(3, 4, 2);
    CHECK(!are_gauge_equivalent(X, q, q2).has_value());
    CHECK(!gauge_equivalent_brute(X, q, q2));

    CHECK(are_gauge_equivalent(X, q, q).has_value());
}

TEST_CASE("chi and constant -1 are not gauge equivalent on O^4_2") {
    auto chi = chi_cocycle(4);
    auto minus = ScalarCocycle::constant(6, 2, 1);
    CHECK(!are_gauge_equivalent(chi.rack, minus, chi.q).has_value());
}

TEST_CASE("cocycle space of D3: only constants") {
    Rack X = affine_rack(3, 2);
    for (unsigned m : {2u, 3u, 6u}) {
        auto cs = cocycle_space(X, m);
        CHECK(cs.h2 == AbelianGroup::from_cyclic_orders({m}));
        CHECK(cs.h2_reps.empty());  // nothing beyond constants
    }
}

TEST_CASE("cocycle space matches homology duality on desk racks") {
    PermGroup S6 = named_group("S6");
    Rack X = from_conjugacy_class(S6, P("(0 1)", 6));
    HomologyResult h = rack_homology(X, 2);
    for (unsigned m : {2u, 3u, 4u, 6u}) {
        auto cs = cocycle_space(X, m);
        CHECK(cs.h2.order_with(m) == h2_dual(h, m).order(m));
    }
    // |H²(O^6_2, G2)| = 4: constants × the G2 torsion factor
    CHECK(cocycle_space(X, 2).h2.order_with(2) == 4);
}

TEST_CASE("indecomposable racks have constant-diagonal cocycles") {
    Rack X = o42();
    auto cs = cocycle_space(X, 2);
    for (const auto &q : cs.h2_reps) {
        CHECK(is_cocycle(X, q));
        for (unsigned i = 1; i < X.size(); ++i) CHECK(q.exp[i][i] == q.exp[0][0]);
    }
}

TEST_CASE("twist conditions and twisting") {
    Rack X = o42();
    std::vector<std::vector<std::uint32_t>> one(X.size(), std::vector<std::uint32_t>(X.size(), 0));
    CHECK(twist_condition(X, one, 2));
    auto q = ScalarCocycle::constant(X.size(), 2, 1);
    CHECK(twist(X, q, one).exp == q.exp);

    // basis of the twist-condition space over G2; twists stay cocycles
    auto space = twist_condition_space(X, 2);
    CHECK(!space.empty());
    unsigned nontrivial = 0;
    for (const auto &v : space) {
        std::vector<std::vector<std::uint32_t>> phi(X.size(), std::vector<std::uint32_t>(X.size(), 0));
        for (unsigned i = 0; i < X.size(); ++i)
            for (unsigned j = 0; j < X.size(); ++j) phi[i][j] = v[i * X.size() + j];
        CHECK(twist_condition(X, phi, 2));
        auto qt = twist(X, q, phi);
        CHECK(is_cocycle(X, qt));
        if (!(qt.exp == q.exp)) ++nontrivial;
    }
    CHECK(nontrivial > 0);

    // a violating φ is detected
    auto bad = one;
    bad[0][1] = 1;
    CHECK(!twist_condition(X, bad, 2));
}

TEST_CASE("group-cocycle restrictions satisfy the twist condition") {
    // φ(g,h) = (−1)^{[g odd][h odd]} is a 2-cocycle on S4; restrict to O^4_2
    PermGroup S4 = named_group("S4");
    auto cls = conjugacy_class(S4, P("(0 1)", 4));
    Rack X = o42();
    std::vector<std::vector<std::uint32_t>> phi(X.size(), std::vector<std::uint32_t>(X.size(), 1));
    CHECK(twist_condition(X, phi, 2));  // all transpositions odd: φ ≡ −1 on X×X
}

TEST_CASE("diagonal braiding export") {
    Rack X = o42();
    auto cls = conjugacy_class(named_group("S4"), P("(0 1)", 4));
    std::uint16_t a = 0, b = 0;
    for (unsigned j = 0; j < cls.size(); ++j)
        if (cls[j] == P("(2 3)", 4)) b = static_cast<std::uint16_t>(j);
    auto q = ScalarCocycle::constant(X.size(), 2, 1);
    auto mat = diagonal_braiding(X, q, {a, b});
    CHECK(mat == std::vector<std::vector<std::uint32_t>>{{1, 1}, {1, 1}});

    auto single = diagonal_braiding(X, q, {a});
    CHECK(single.size() == 1);

    std::uint16_t c = 0;
    for (unsigned j = 0; j < cls.size(); ++j)
        if (cls[j] == P("(1 2)", 4)) c = static_cast<std::uint16_t>(j);
    CHECK_THROWS(diagonal_braiding(X, q, {a, c}));  // not abelian
}

TEST_CASE("dual cocycles") {
    // involutive rack with constant q: dual is itself
    Rack X = o42();
    auto q = ScalarCocycle::constant(X.size(), 2, 1);
    auto [dx, dq] = dual_cocycle(X, q);
    CHECK(dx == X);  // transpositions: φ_x² = id
    CHECK(dq.exp == q.exp);

    // affine(Z/5,2) dualizes to affine(Z/5,3)
    Rack A = affine_rack(5, 2);
    auto [da, dqa] = dual_cocycle(A, ScalarCocycle::constant(5, 2, 1));
    CHECK(da == affine_rack(5, 3));
    CHECK(is_cocycle(da, dqa));
    // double dual returns the original
    auto [dda, ddqa] = dual_cocycle(da, dqa);
    CHECK(dda == A);
    CHECK(ddqa.exp == ScalarCocycle::constant(5, 2, 1).exp);
}

TEST_CASE("m = 1 has only the trivial cocycle") {
    auto cs = cocycle_space(affine_rack(3, 2), 1);
    CHECK(cs.h2.order_with(1) == 1);
    CHECK(cs.z2.order_with(1) == 1);
}

TEST_CASE("coboundaries satisfy the cocycle law") {
    Rack X = affine_rack(5, 2);
    for (unsigned m : {2u, 3u, 4u}) {
        auto q0 = ScalarCocycle::constant(X.size(), m, 0);
        GaugeMap g{m, {1, 0, 2, 3, 1}};
        CHECK(is_cocycle(X, gauge_transform(X, q0, g)));
    }
}
