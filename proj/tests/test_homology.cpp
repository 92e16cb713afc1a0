#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "rackforge/caps.hpp"
#include "rackforge/homology.hpp"
#include "rackforge/paper.hpp"

using namespace rackforge;

namespace {
Permutation P(const std::string &s, unsigned deg) { return Permutation::from_cycles(s, deg); }
}

TEST_CASE("smith normal form basics") {
    IntMatrix M(2, 2);
    M.add(0, 0, 2);
    M.add(1, 1, 3);
    auto snf = smith_normal_form(M);
    CHECK(snf.divisors == std::vector<mpz_class>{1, 6});

    IntMatrix Z(3, 4);
    CHECK(smith_normal_form(Z).divisors.empty());

    IntMatrix A(2, 2);
    A.add(0, 0, 4);
    A.add(1, 1, 6);
    CHECK(smith_normal_form(A).divisors == std::vector<mpz_class>{2, 12});
}

TEST_CASE("snf recovers planted divisors under unimodular factors") {
    // M = U·D·V with unimodular U, V built from shear matrices
    const int n = 8;
    std::vector<std::vector<long>> D(n, std::vector<long>(n, 0));
    std::vector<long> planted{1, 1, 2, 2, 6, 12, 0, 0};
    for (int i = 0; i < n; ++i) D[i][i] = planted[i];
    auto shear_left = [&](int a, int b, long k) {  // row_a += k row_b
        if (a == b) return;
        for (int j = 0; j < n; ++j) D[a][j] += k * D[b][j];
    };
    auto shear_right = [&](int a, int b, long k) {  // col_a += k col_b
        if (a == b) return;
        for (int i = 0; i < n; ++i) D[i][a] += k * D[i][b];
    };
    std::uint64_t state = 12345;
    auto rnd = [&] {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return static_cast<long>(state % 5) - 2;
    };
    for (int rep = 0; rep < 40; ++rep) {
        int a = static_cast<int>(state % n);
        int b = static_cast<int>((state >> 8) % n);
        long k = rnd();
        if (a != b) { shear_left(a, b, k); shear_right((a + 3) % n, (b + 5) % n, rnd()); }
        state = state * 6364136223846793005ULL + 1;
    }
    IntMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.add(i, j, D[i][j]);
    auto snf = smith_normal_form(M);
    CHECK(snf.divisors == std::vector<mpz_class>{1, 1, 2, 2, 6, 12});
}

TEST_CASE("boundary conventions") {
    Rack one = Rack::validate({{0}});
    // one-element rack: all differentials vanish, H_n = Z for n >= 1
    for (unsigned n = 1; n <= 4; ++n) {
        auto h = rack_homology(one, n);
        CHECK(h.betti == 1);
        CHECK(h.torsion.empty());
    }

    // ∂∘∂ = 0 for computed degrees on sample racks: result[r] over a column
    // of ∂_{n+1} is Σ_mid a(r, mid)·b(mid, col)
    for (const Rack &X : {affine_rack(3, 2), affine_rack(5, 2),
                          from_conjugacy_class(named_group("A4"), P("(0 1 2)", 4))}) {
        for (unsigned n = 2; n <= 4; ++n) {
            IntMatrix a = boundary_matrix(X, n);
            IntMatrix b = boundary_matrix(X, n + 1);
            for (std::size_t col = 0; col < std::min<std::size_t>(b.cols(), 60); ++col) {
                for (std::size_t r = 0; r < a.rows(); ++r) {
                    mpz_class acc = 0;
                    for (const auto &[mid, w] : a.row(r)) acc += w * b.get(mid, col);
                    CHECK(acc == 0);
                }
            }
        }
    }
}

TEST_CASE("H1 is free of rank the number of inner orbits") {
    PermGroup S5 = named_group("S5");
    for (const Rack &X : {affine_rack(5, 2), from_conjugacy_class(S5, P("(0 1 2 3 4)", 5))}) {
        auto h = rack_homology(X, 1);
        CHECK(h.betti == defect_rank(X));
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("golden homology rows at small sizes") {
    PermGroup S6 = named_group("S6");
    auto h = rack_homology(from_conjugacy_class(S6, P("(0 1)", 6)), 2);
    CHECK(h.betti == 1);
    CHECK(h.torsion == std::vector<unsigned long>{2});

    PermGroup A5 = named_group("A5");
    auto h2 = rack_homology(from_conjugacy_class(A5, P("(0 1 2)", 5)), 2);
    CHECK(h2.betti == 1);
    CHECK(h2.torsion == std::vector<unsigned long>{6});

    // D3 has H2 = Z (only constant cocycles beyond gauge)
    auto h3 = rack_homology(affine_rack(3, 2), 2);
    CHECK(h3.betti == 1);
    CHECK(h3.torsion.empty());
}

TEST_CASE("h2_dual arithmetic") {
    HomologyResult h;
    h.degree = 2;
    h.betti = 1;
    h.torsion = {2};
    auto d2 = h2_dual(h, 2);
    CHECK(d2.free_rank == 1);
    CHECK(d2.cyclic == std::vector<unsigned long>{2});
    CHECK(d2.order(2) == 4);

    HomologyResult a5;
    a5.betti = 1;
    a5.torsion = {6};
    auto dd = h2_dual(a5, 0);  // symbolic C^× form
    CHECK(dd.free_rank == 1);
    CHECK(dd.cyclic == std::vector<unsigned long>{6});

    auto d1 = h2_dual(a5, 1);
    CHECK(d1.cyclic.empty());

    auto d4 = h2_dual(a5, 4);
    CHECK(d4.cyclic == std::vector<unsigned long>{2});  // gcd(6,4)
}

TEST_CASE("homology cap") {
    Rack X = affine_rack(5, 2);
    auto saved = caps().chain_cells;
    caps().chain_cells = 500;
    CHECK_THROWS_AS(rack_homology(X, 3), cap_exceeded);  // 5^4 cells > 500
    caps().chain_cells = saved;
}
