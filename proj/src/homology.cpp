#include "rackforge/homology.hpp"

#include <numeric>

#include "rackforge/caps.hpp"

namespace rackforge {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

IntMatrix boundary_matrix(const Rack &X, unsigned n) {
    if (n == 0) throw std::invalid_argument("boundary degree must be >= 1");
    const std::uint64_t N = X.size();
    std::uint64_t cells = ipow(N, n);
    if (cells > caps().chain_cells) throw cap_exceeded("chain complex exceeds cell cap");
    if (n == 1) return IntMatrix(1, static_cast<std::size_t>(cells));  // ∂₁ = 0

    const std::uint64_t rows = ipow(N, n - 1);
    IntMatrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(cells));
    std::vector<unsigned> t(n, 0);
    std::vector<unsigned> face(n - 1);
    for (std::uint64_t col = 0; col < cells; ++col) {
        std::uint64_t rest = col;
        for (unsigned i = n; i-- > 0;) {
            t[i] = static_cast<unsigned>(rest % N);
            rest /= N;
        }
        // ∂(x₁,…,x_n) = Σ_{i=2}^{n} (−1)^i [(x₁,…,x̂ᵢ,…,x_n)
        //                               − (xᵢ▷x₁,…,xᵢ▷x_{i−1},x_{i+1},…,x_n)]
        for (unsigned i = 2; i <= n; ++i) {
            long sign = (i % 2 == 0) ? 1 : -1;
            unsigned k = 0;
            for (unsigned j = 0; j < n; ++j)
                if (j != i - 1) face[k++] = t[j];
            std::uint64_t row = 0;
            for (unsigned j = 0; j + 1 < n; ++j) row = row * N + face[j];
            M.add(static_cast<std::size_t>(row), static_cast<std::size_t>(col), sign);

            for (unsigned j = 0; j + 1 < i; ++j) face[j] = X.op(t[i - 1], t[j]);
            for (unsigned j = i; j < n; ++j) face[j - 1] = t[j];
            row = 0;
            for (unsigned j = 0; j + 1 < n; ++j) row = row * N + face[j];
            M.add(static_cast<std::size_t>(row), static_cast<std::size_t>(col), -sign);
        }
    }
    return M;
}

HomologyResult rack_homology(const Rack &X, unsigned n) {
    if (X.size() > caps().homology_rack) throw cap_exceeded("rack exceeds homology size cap");
    IntMatrix dn = boundary_matrix(X, n);
    IntMatrix dn1 = boundary_matrix(X, n + 1);
    std::size_t rank_dn = int_rank(dn);
    SmithResult snf = smith_normal_form(dn1);
    std::uint64_t dim_cn = ipow(X.size(), n);
    HomologyResult h;
    h.degree = n;
    h.betti = static_cast<unsigned>(dim_cn - rank_dn - snf.rank());
    for (const auto &d : snf.divisors)
        if (d > 1) h.torsion.push_back(d.get_ui());
    return h;
}

DualGroup h2_dual(const HomologyResult &h, unsigned long m) {
    DualGroup g;
    g.free_rank = h.betti;
    for (auto d : h.torsion) {
        unsigned long c = m == 0 ? d : std::gcd(d, m);
        if (c > 1) g.cyclic.push_back(c);
    }
    return g;
}

}  // namespace rackforge
