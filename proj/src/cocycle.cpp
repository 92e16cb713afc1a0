#include "rackforge/cocycle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "rackforge/caps.hpp"
#include "rackforge/intmat.hpp"
#include "rackforge/modring.hpp"

namespace rackforge {

ScalarCocycle ScalarCocycle::constant(unsigned rack_size, unsigned m, std::uint32_t e) {
    ScalarCocycle q;
    q.m = m;
    q.exp.assign(rack_size, std::vector<std::uint32_t>(rack_size, e % m));
    return q;
}

std::optional<Triple> cocycle_violation(const Rack &X, const ScalarCocycle &q) {
    const unsigned n = X.size();
    if (q.exp.size() != n) throw std::invalid_argument("cocycle size mismatch");
    const unsigned m = q.m;
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            unsigned xy = X.op(x, y);
            for (unsigned z = 0; z < n; ++z) {
                unsigned lhs = (q.exp[x][X.op(y, z)] + q.exp[y][z]) % m;
                unsigned rhs = (q.exp[xy][X.op(x, z)] + q.exp[x][z]) % m;
                if (lhs != rhs) return Triple{x, y, z};
            }
        }
    return std::nullopt;
}

bool is_cocycle(const Rack &X, const ScalarCocycle &q) { return !cocycle_violation(X, q); }

std::string AbelianGroup::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (unsigned i = 0; i < free_rank; ++i) {
        out << (first ? "" : " x ") << "Z";
        first = false;
    }
    for (auto c : prime_power_cyclic) {
        out << (first ? "" : " x ") << "Z/" << c;
        first = false;
    }
    if (first) out << "1";
    return out.str();
}

unsigned long long AbelianGroup::order_with(unsigned long m) const {
    unsigned long long o = 1;
    for (unsigned i = 0; i < free_rank; ++i) o *= m;
    for (auto c : prime_power_cyclic) o *= c;
    return o;
}

AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<unsigned long> &orders) {
    AbelianGroup g;
    for (auto o : orders) {
        unsigned long v = o;
        for (unsigned long p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            unsigned long part = 1;
            while (v % p == 0) { v /= p; part *= p; }
            g.prime_power_cyclic.push_back(part);
        }
        if (v > 1) g.prime_power_cyclic.push_back(v);
    }
    std::sort(g.prime_power_cyclic.begin(), g.prime_power_cyclic.end());
    return g;
}

namespace {

std::vector<std::pair<unsigned, unsigned>> factorize(unsigned m) {
    std::vector<std::pair<unsigned, unsigned>> out;  // (p, k)
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        unsigned k = 0;
        while (m % p == 0) { m /= p; ++k; }
        out.emplace_back(p, k);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

// streaming GF(p) kernel of the cocycle-law system with saturation plus a
// full verification pass (kernel(subset) ⊇ kernel(all); equality is certified
// by checking every kernel vector against every equation, resuming
// elimination on any violation)
struct GfCocycleKernel {
    std::size_t rank = 0;
    std::vector<std::vector<std::uint8_t>> kernel;  // values mod p, length n²
};

GfCocycleKernel gf_cocycle_kernel(const Rack &X, unsigned p) {
    const unsigned n = X.size();
    const std::size_t V = static_cast<std::size_t>(n) * n;
    auto rref = make_rref(p, V);
    std::vector<std::pair<std::uint32_t, std::int32_t>> row;
    auto emit = [&](unsigned x, unsigned y, unsigned z) {
        row.clear();
        unsigned yz = X.op(y, z), xy = X.op(x, y), xz = X.op(x, z);
        row.emplace_back(x * n + yz, 1);
        row.emplace_back(y * n + z, 1);
        row.emplace_back(xy * n + xz, -1);
        row.emplace_back(x * n + z, -1);
        return rref->add_sparse(row);
    };
    const std::size_t patience = std::max<std::size_t>(4096, V / 4);
    std::size_t since = 0;
    bool stopped = false;
    for (unsigned x = 0; x < n && !stopped; ++x)
        for (unsigned y = 0; y < n && !stopped; ++y) {
            if (x == y) continue;  // identity equation
            for (unsigned z = 0; z < n; ++z) {
                if (emit(x, y, z)) since = 0;
                else if (++since > patience) { stopped = true; break; }
            }
        }
    // verify; on violations resume elimination and re-verify
    for (;;) {
        auto kernel = rref->kernel_basis();
        bool clean = true;
        for (unsigned x = 0; x < n; ++x)
            for (unsigned y = 0; y < n; ++y) {
                if (x == y) continue;
                for (unsigned z = 0; z < n; ++z) {
                    unsigned yz = X.op(y, z), xy = X.op(x, y), xz = X.op(x, z);
                    std::size_t a = static_cast<std::size_t>(x) * n + yz;
                    std::size_t b = static_cast<std::size_t>(y) * n + z;
                    std::size_t c = static_cast<std::size_t>(xy) * n + xz;
                    std::size_t d = static_cast<std::size_t>(x) * n + z;
                    for (const auto &v : kernel) {
                        unsigned s = (v[a] + v[b] + 2u * p - v[c] - v[d]) % p;
                        if (s) {
                            emit(x, y, z);
                            clean = false;
                            break;
                        }
                    }
                }
            }
        if (clean) return GfCocycleKernel{rref->rank(), std::move(kernel)};
    }
}

// gauge rows: coboundary generator for base point t is (i,j) ↦ [j=t] − [i▷j=t]
std::vector<std::pair<std::uint32_t, std::int32_t>> gauge_row(const Rack &X, unsigned t) {
    const unsigned n = X.size();
    std::vector<std::pair<std::uint32_t, std::int32_t>> row;
    for (unsigned i = 0; i < n; ++i) {
        row.emplace_back(i * n + t, 1);
        row.emplace_back(i * n + X.op_inv(i, t), -1);  // (i,j) with i▷j = t
    }
    return row;
}

}  // namespace

std::vector<unsigned long> h2_log_orders(const Rack &X, unsigned p, unsigned k) {
    if (k != 1)
        throw std::invalid_argument("h2_log_orders handles k = 1; use cocycle_space for higher powers");
    auto kern = gf_cocycle_kernel(X, p);
    const unsigned n = X.size();
    const std::size_t V = static_cast<std::size_t>(n) * n;
    auto rref = make_rref(p, V);
    for (unsigned t = 0; t < n; ++t) rref->add_sparse(gauge_row(X, t));
    unsigned long z_log = static_cast<unsigned long>(V - kern.rank);
    unsigned long b_log = static_cast<unsigned long>(rref->rank());
    return {z_log - b_log};
}

CocycleSpace cocycle_space(const Rack &X, unsigned m) {
    const unsigned n = X.size();
    if (n > caps().cocycle_rack) throw cap_exceeded("rack exceeds cocycle-space size cap");
    if (m < 1) throw std::invalid_argument("root order must be >= 1");
    CocycleSpace out;
    if (m == 1) {
        out.reps_complete = true;
        return out;  // only the trivial cocycle
    }
    const std::size_t V = static_cast<std::size_t>(n) * n;
    auto factors = factorize(m);
    bool squarefree = std::all_of(factors.begin(), factors.end(),
                                  [](auto f) { return f.second == 1; });

    // gauge matrix SNF (tiny) serves every modulus
    IntMatrix G(V, n);
    for (unsigned t = 0; t < n; ++t)
        for (unsigned i = 0; i < n; ++i) {
            G.add(static_cast<std::size_t>(i) * n + t, t, 1);
            G.add(static_cast<std::size_t>(i) * n + X.op_inv(i, t), t, -1);
        }
    SmithResult gauge_snf = smith_normal_form(G);

    std::vector<unsigned long> z_orders, b_orders, h_orders;  // cyclic orders
    std::vector<unsigned long> e_divs;
    for (const auto &d : gauge_snf.divisors) e_divs.push_back(d.get_ui());

    if (squarefree) {
        for (auto [p, k] : factors) {
            (void)k;
            auto kern = gf_cocycle_kernel(X, p);
            std::size_t z_p = V - kern.rank;
            auto rref = make_rref(p, V);
            for (unsigned t = 0; t < n; ++t) rref->add_sparse(gauge_row(X, t));
            std::size_t b_p = rref->rank();
            for (std::size_t i = 0; i < z_p; ++i) z_orders.push_back(p);
            for (std::size_t i = 0; i < b_p; ++i) b_orders.push_back(p);
            for (std::size_t i = 0; i < z_p - b_p; ++i) h_orders.push_back(p);

            // representatives: kernel vectors independent modulo coboundaries
            // and constants, lifted to exponents mod m (≡ 0 at other primes)
            rref->add_sparse([&] {
                std::vector<std::pair<std::uint32_t, std::int32_t>> ones;
                for (std::uint32_t c = 0; c < V; ++c) ones.emplace_back(c, 1);
                return ones;
            }());
            unsigned long lift = m / p;           // CRT lift: v ↦ v·(m/p)·inv?
            // exponent e over GF(p) lifts to e·(m/p) mod m, which reduces to
            // e·(m/p mod p) mod p at p; fix with the inverse of m/p mod p
            unsigned long mp = (m / p) % p, inv = 1;
            for (unsigned long c = 1; c < p; ++c)
                if (mp * c % p == 1) { inv = c; break; }
            for (const auto &v : kern.kernel) {
                std::vector<std::pair<std::uint32_t, std::int32_t>> terms;
                for (std::uint32_t c = 0; c < V; ++c)
                    if (v[c]) terms.emplace_back(c, static_cast<std::int32_t>(v[c]));
                if (!rref->add_sparse(terms)) continue;
                ScalarCocycle q;
                q.m = m;
                q.exp.assign(n, std::vector<std::uint32_t>(n, 0));
                for (unsigned i = 0; i < n; ++i)
                    for (unsigned j = 0; j < n; ++j)
                        q.exp[i][j] = static_cast<std::uint32_t>(
                            v[static_cast<std::size_t>(i) * n + j] * inv % p * lift % m);
                out.h2_reps.push_back(std::move(q));
            }
        }
        out.reps_complete = true;
    } else {
        // integer SNF of the cocycle-law system: kernel structure mod any m
        std::uint64_t eqs = static_cast<std::uint64_t>(n) * n * n;
        IntMatrix E(V, static_cast<std::size_t>(eqs));
        std::size_t col = 0;
        for (unsigned x = 0; x < n; ++x)
            for (unsigned y = 0; y < n; ++y)
                for (unsigned z = 0; z < n; ++z) {
                    if (x != y) {
                        unsigned yz = X.op(y, z), xy = X.op(x, y), xz = X.op(x, z);
                        E.add(static_cast<std::size_t>(x) * n + yz, col, 1);
                        E.add(static_cast<std::size_t>(y) * n + z, col, 1);
                        E.add(static_cast<std::size_t>(xy) * n + xz, col, -1);
                        E.add(static_cast<std::size_t>(x) * n + z, col, -1);
                    }
                    ++col;
                }
        SmithResult esnf = smith_normal_form(E);
        std::vector<unsigned long> d_divs;
        for (const auto &d : esnf.divisors) d_divs.push_back(d.get_ui());
        std::size_t r = d_divs.size();

        for (auto d : d_divs) {
            unsigned long g = std::gcd(d, (unsigned long)m);
            if (g > 1) z_orders.push_back(g);
        }
        for (std::size_t i = 0; i < V - r; ++i) z_orders.push_back(m);
        for (auto e : e_divs) {
            unsigned long c = m / std::gcd(e, (unsigned long)m);
            if (c > 1) b_orders.push_back(c);
        }
        // H² structure per prime from the (k := k_p)-graded orders
        for (auto [p, k] : factors) {
            auto log_ker = [&](unsigned j) {
                unsigned long s = 0;
                for (auto d : d_divs) {
                    unsigned long v = 0, dd = d;
                    while (dd % p == 0) { dd /= p; ++v; }
                    s += std::min<unsigned long>(v, j);
                }
                return s + static_cast<unsigned long>(j) * (V - r);
            };
            auto log_im = [&](unsigned j) {
                unsigned long s = 0;
                for (auto e : e_divs) {
                    unsigned long v = 0, ee = e;
                    while (ee % p == 0) { ee /= p; ++v; }
                    s += j - std::min<unsigned long>(v, j);
                }
                return s;
            };
            std::vector<unsigned long> h_log(k + 1, 0);
            for (unsigned j = 1; j <= k; ++j) h_log[j] = log_ker(j) - log_im(j);
            // Δ_j = #factors of order ≥ p^j (plus full-order ones)
            std::vector<unsigned long> delta(k + 2, 0);
            for (unsigned j = 1; j <= k; ++j) delta[j] = h_log[j] - h_log[j - 1];
            for (unsigned j = 1; j < k; ++j) {
                unsigned long cnt = delta[j] - delta[j + 1];
                unsigned long pj = 1;
                for (unsigned t = 0; t < j; ++t) pj *= p;
                for (unsigned long i = 0; i < cnt; ++i) h_orders.push_back(pj);
            }
            unsigned long pk = 1;
            for (unsigned t = 0; t < k; ++t) pk *= p;
            for (unsigned long i = 0; i < delta[k]; ++i) h_orders.push_back(pk);
        }
        out.reps_complete = false;
    }

    out.z2 = AbelianGroup::from_cyclic_orders(z_orders);
    out.b2 = AbelianGroup::from_cyclic_orders(b_orders);
    out.h2 = AbelianGroup::from_cyclic_orders(h_orders);
    return out;
}

ChiData chi_cocycle(unsigned m_sym) {
    if (m_sym < 3) throw std::invalid_argument("chi cocycle needs m >= 3");
    std::vector<Permutation> gens{Permutation::from_cycles("(0 1)", m_sym)};
    {
        std::string big = "(";
        for (unsigned i = 0; i < m_sym; ++i) big += (i ? " " : "") + std::to_string(i);
        big += ")";
        gens.push_back(Permutation::from_cycles(big, m_sym));
    }
    PermGroup S(std::move(gens));
    Permutation t01 = Permutation::from_cycles("(0 1)", m_sym);
    Rack X = from_conjugacy_class(S, t01);
    auto cls = conjugacy_class(S, t01);
    const unsigned n = X.size();
    // transposition points (i,j), i<j, per class element
    std::vector<std::pair<unsigned, unsigned>> pts(n);
    for (unsigned a = 0; a < n; ++a) {
        unsigned i = 0;
        while (cls[a](i) == i) ++i;
        pts[a] = {i, cls[a](i)};
        if (pts[a].first > pts[a].second) std::swap(pts[a].first, pts[a].second);
    }
    ScalarCocycle q;
    q.m = 2;
    q.exp.assign(n, std::vector<std::uint32_t>(n, 0));
    for (unsigned s = 0; s < n; ++s)
        for (unsigned t = 0; t < n; ++t) {
            auto [i, j] = pts[t];
            q.exp[s][t] = cls[s](i) > cls[s](j) ? 1 : 0;  // −1 exponent when inverted
        }
    return ChiData{std::move(X), std::move(q)};
}

ScalarCocycle gauge_transform(const Rack &X, const ScalarCocycle &q, const GaugeMap &g) {
    if (g.m != q.m || g.gamma.size() != q.exp.size())
        throw std::invalid_argument("gauge map shape mismatch");
    const unsigned n = X.size(), m = q.m;
    ScalarCocycle out;
    out.m = m;
    out.exp.assign(n, std::vector<std::uint32_t>(n, 0));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            out.exp[i][j] = (q.exp[i][j] + g.gamma[j] + m - g.gamma[X.op(i, j)] % m) % m;
    return out;
}

std::optional<GaugeMap> are_gauge_equivalent(const Rack &X, const ScalarCocycle &q,
                                             const ScalarCocycle &qp) {
    if (q.m != qp.m || q.exp.size() != qp.exp.size())
        throw std::invalid_argument("cocycle shape mismatch");
    const unsigned n = X.size();
    const long long m = q.m;
    // difference constraints γ_j − γ_{i▷j} ≡ c_{ij}: weighted union-find
    std::vector<unsigned> parent(n);
    std::vector<long long> pot(n, 0);  // γ_v − γ_{root}
    std::iota(parent.begin(), parent.end(), 0);
    std::function<unsigned(unsigned)> find = [&](unsigned v) -> unsigned {
        if (parent[v] == v) return v;
        unsigned r = find(parent[v]);
        pot[v] = (pot[v] + pot[parent[v]]) % m;
        parent[v] = r;
        return r;
    };
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            long long c = ((long long)qp.exp[i][j] - (long long)q.exp[i][j] % m + 2 * m) % m;
            unsigned a = j, b = X.op(i, j);
            // γ_a − γ_b ≡ c
            unsigned ra = find(a), rb = find(b);
            if (ra == rb) {
                if (((pot[a] - pot[b]) % m + m) % m != c) return std::nullopt;
            } else {
                // attach rb under ra: γ_b = γ_a − c → pot[rb] = pot[a] − c − pot[b]
                parent[rb] = ra;
                pot[rb] = ((pot[a] - c - pot[b]) % m + m) % m;
            }
        }
    GaugeMap g;
    g.m = q.m;
    g.gamma.assign(n, 0);
    for (unsigned v = 0; v < n; ++v) {
        find(v);
        g.gamma[v] = static_cast<std::uint32_t>(((pot[v] % m) + m) % m);
    }
    if (!(gauge_transform(X, q, g).exp == qp.exp))
        throw std::logic_error("gauge witness failed re-check");
    return g;
}

std::optional<Triple> twist_condition_violation(const Rack &X,
                                                const std::vector<std::vector<std::uint32_t>> &phi,
                                                unsigned m) {
    const unsigned n = X.size();
    if (phi.size() != n) throw std::invalid_argument("phi size mismatch");
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            for (unsigned z = 0; z < n; ++z) {
                unsigned yz = X.op(y, z);
                unsigned xyz = X.op(x, yz);
                unsigned lhs = (phi[x][z] + phi[X.op(x, y)][X.op(x, z)] + phi[xyz][x] + phi[yz][y]) % m;
                unsigned rhs = (phi[y][z] + phi[x][yz] + phi[xyz][X.op(x, y)] + phi[X.op(x, z)][x]) % m;
                if (lhs != rhs) return Triple{x, y, z};
            }
    return std::nullopt;
}

bool twist_condition(const Rack &X, const std::vector<std::vector<std::uint32_t>> &phi, unsigned m) {
    return !twist_condition_violation(X, phi, m);
}

std::vector<std::vector<std::uint8_t>> twist_condition_space(const Rack &X, unsigned p) {
    const unsigned n = X.size();
    const std::size_t V = static_cast<std::size_t>(n) * n;
    auto rref = make_rref(p, V);
    std::vector<std::pair<std::uint32_t, std::int32_t>> row;
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            for (unsigned z = 0; z < n; ++z) {
                unsigned yz = X.op(y, z), xyz = X.op(x, yz);
                row.clear();
                row.emplace_back(x * n + z, 1);
                row.emplace_back(X.op(x, y) * n + X.op(x, z), 1);
                row.emplace_back(xyz * n + x, 1);
                row.emplace_back(yz * n + y, 1);
                row.emplace_back(y * n + z, -1);
                row.emplace_back(x * n + yz, -1);
                row.emplace_back(xyz * n + X.op(x, y), -1);
                row.emplace_back(X.op(x, z) * n + x, -1);
                rref->add_sparse(row);
            }
    return rref->kernel_basis();
}

ScalarCocycle twist(const Rack &X, const ScalarCocycle &q,
                    const std::vector<std::vector<std::uint32_t>> &phi) {
    if (auto bad = twist_condition_violation(X, phi, q.m))
        throw std::invalid_argument("twist condition fails at (" + std::to_string(bad->x) + "," +
                                    std::to_string(bad->y) + "," + std::to_string(bad->z) + ")");
    const unsigned n = X.size(), m = q.m;
    ScalarCocycle out;
    out.m = m;
    out.exp.assign(n, std::vector<std::uint32_t>(n, 0));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            out.exp[x][y] = (phi[x][y] + m - phi[X.op(x, y)][x] % m + q.exp[x][y]) % m;
    return out;
}

std::vector<std::vector<std::uint32_t>> diagonal_braiding(const Rack &X, const ScalarCocycle &q,
                                                          const std::vector<std::uint16_t> &S) {
    for (auto a : S)
        for (auto b : S)
            if (a != b && (X.op(a, b) != b || X.op(b, a) != a))
                throw std::invalid_argument("subset is not abelian");
    std::vector<std::vector<std::uint32_t>> out(S.size(), std::vector<std::uint32_t>(S.size()));
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) out[i][j] = q.exp[S[i]][S[j]];
    return out;
}

std::pair<Rack, ScalarCocycle> dual_cocycle(const Rack &X, const ScalarCocycle &q) {
    Rack dual = power_rack(X, -1);
    const unsigned n = X.size();
    ScalarCocycle qh;
    qh.m = q.m;
    qh.exp.assign(n, std::vector<std::uint32_t>(n, 0));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) qh.exp[x][y] = q.exp[x][X.op_inv(x, y)];
    return {std::move(dual), std::move(qh)};
}

}  // namespace rackforge
