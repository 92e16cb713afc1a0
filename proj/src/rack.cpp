#include "rackforge/rack.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "rackforge/caps.hpp"

namespace rackforge {

Rack Rack::validate(std::vector<std::vector<std::uint16_t>> table,
                    std::vector<std::string> labels, std::string provenance) {
    using Err = rack_validation_error;
    const auto n = static_cast<unsigned>(table.size());
    if (n == 0) throw Err(Err::Kind::shape, "empty table");
    if (n > caps().rack_size) throw cap_exceeded("rack size exceeds cap");
    for (unsigned x = 0; x < n; ++x) {
        if (table[x].size() != n) throw Err(Err::Kind::shape, "table is not square", static_cast<int>(x));
        for (unsigned y = 0; y < n; ++y)
            if (table[x][y] >= n)
                throw Err(Err::Kind::shape, "entry out of range", static_cast<int>(x), static_cast<int>(y));
    }
    Rack r;
    r.n_ = n;
    r.inv_table_.assign(n, std::vector<std::uint16_t>(n, 0));
    for (unsigned x = 0; x < n; ++x) {
        std::vector<bool> seen(n, false);
        for (unsigned y = 0; y < n; ++y) {
            auto v = table[x][y];
            if (seen[v])
                throw Err(Err::Kind::non_bijective,
                          "translation of " + std::to_string(x) + " is not a bijection",
                          static_cast<int>(x));
            seen[v] = true;
            r.inv_table_[x][v] = static_cast<std::uint16_t>(y);
        }
    }
    for (unsigned x = 0; x < n; ++x)
        if (table[x][x] != x)
            throw Err(Err::Kind::quandle, "quandle axiom fails at " + std::to_string(x),
                      static_cast<int>(x));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            if (table[x][y] == y && table[y][x] != x)
                throw Err(Err::Kind::crossed_set,
                          "crossed-set axiom fails at (" + std::to_string(x) + "," + std::to_string(y) + ")",
                          static_cast<int>(x), static_cast<int>(y));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            auto xy = table[x][y];
            for (unsigned z = 0; z < n; ++z)
                if (table[x][table[y][z]] != table[xy][table[x][z]])
                    throw Err(Err::Kind::self_distributivity,
                              "self-distributivity fails at (" + std::to_string(x) + "," +
                                  std::to_string(y) + "," + std::to_string(z) + ")",
                              static_cast<int>(x), static_cast<int>(y), static_cast<int>(z));
        }
    if (labels.empty()) {
        labels.resize(n);
        for (unsigned i = 0; i < n; ++i) labels[i] = std::to_string(i);
    } else if (labels.size() != n) {
        throw Err(Err::Kind::shape, "label count mismatch");
    }
    r.table_ = std::move(table);
    r.labels_ = std::move(labels);
    r.prov_ = std::move(provenance);
    return r;
}

Permutation Rack::translation(unsigned x) const {
    std::vector<std::uint16_t> img(table_[x].begin(), table_[x].end());
    return Permutation(std::move(img));
}

Rack from_conjugacy_class(const PermGroup &G, const Permutation &x) {
    auto cls = conjugacy_class(G, x);
    std::unordered_map<Permutation, std::uint16_t, PermHash> index;
    for (std::uint16_t i = 0; i < cls.size(); ++i) index.emplace(cls[i], i);
    const auto n = static_cast<unsigned>(cls.size());
    if (n > caps().rack_size) throw cap_exceeded("class size exceeds rack cap");
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    std::vector<std::string> labels(n);
    for (unsigned i = 0; i < n; ++i) {
        labels[i] = cls[i].cycle_string();
        for (unsigned j = 0; j < n; ++j) table[i][j] = index.at(conjugate(cls[i], cls[j]));
    }
    return Rack::validate(std::move(table), std::move(labels),
                          "conj(" + x.cycle_string() + ")");
}

Rack from_twisted_class(const PermGroup &G, const GroupAutomorphism &u, const Permutation &x) {
    if (!u.validate()) throw perm_error("invalid automorphism");
    if (!G.contains(x)) throw perm_error("element not in group");
    // orbit of x under a ⇀_u b = a·b·u(a⁻¹)
    std::vector<Permutation> orbit{x};
    std::unordered_map<Permutation, std::uint16_t, PermHash> index;
    index.emplace(x, 0);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        Permutation cur = orbit[head];
        for (const auto &a : G.generators()) {
            Permutation next = compose(compose(a, cur), u.apply(a.inverse()));
            if (index.size() > caps().rack_size) throw cap_exceeded("twisted class exceeds rack cap");
            if (index.emplace(next, static_cast<std::uint16_t>(orbit.size())).second)
                orbit.push_back(std::move(next));
        }
    }
    const auto n = static_cast<unsigned>(orbit.size());
    if (n > caps().rack_size) throw cap_exceeded("twisted class exceeds rack cap");
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    std::vector<std::string> labels(n);
    for (unsigned i = 0; i < n; ++i) {
        labels[i] = orbit[i].cycle_string();
        for (unsigned j = 0; j < n; ++j) {
            // y ▷ z = y·u(z·y⁻¹)
            Permutation v = compose(orbit[i], u.apply(compose(orbit[j], orbit[i].inverse())));
            table[i][j] = index.at(v);
        }
    }
    return Rack::validate(std::move(table), std::move(labels),
                          "twisted(" + x.cycle_string() + ")");
}

namespace {

struct RingVec {
    // mixed-radix encoding over ℤ/m₁ × … × ℤ/m_t, first coordinate most significant
    std::vector<unsigned> moduli;
    unsigned total;
    explicit RingVec(std::vector<unsigned> ms) : moduli(std::move(ms)) {
        total = 1;
        for (auto m : moduli) {
            if (m == 0) throw std::invalid_argument("zero modulus");
            total *= m;
        }
    }
    std::vector<long long> decode(unsigned idx) const {
        std::vector<long long> v(moduli.size());
        for (std::size_t i = moduli.size(); i-- > 0;) {
            v[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return v;
    }
    unsigned encode(const std::vector<long long> &v) const {
        unsigned idx = 0;
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            long long r = ((v[i] % moduli[i]) + moduli[i]) % moduli[i];
            idx = idx * moduli[i] + static_cast<unsigned>(r);
        }
        return idx;
    }
};

std::vector<long long> mat_apply(const std::vector<std::vector<long long>> &T,
                                 const std::vector<long long> &v) {
    std::vector<long long> out(T.size(), 0);
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += T[i][j] * v[j];
    return out;
}

}  // namespace

Rack affine_rack(const std::vector<unsigned> &moduli, const std::vector<std::vector<long long>> &T) {
    RingVec ring(moduli);
    const unsigned n = ring.total;
    if (n > caps().rack_size) throw cap_exceeded("affine rack exceeds size cap");
    if (T.size() != moduli.size())
        throw std::invalid_argument("T dimension mismatch");
    // invertibility over the ring = the induced map on elements is a bijection
    std::vector<bool> hit(n, false);
    for (unsigned i = 0; i < n; ++i) {
        unsigned im = ring.encode(mat_apply(T, ring.decode(i)));
        if (hit[im]) throw std::invalid_argument("T is not invertible over the ring");
        hit[im] = true;
    }
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    for (unsigned x = 0; x < n; ++x) {
        auto vx = ring.decode(x);
        auto Tx = mat_apply(T, vx);
        for (unsigned y = 0; y < n; ++y) {
            auto vy = ring.decode(y);
            auto Ty = mat_apply(T, vy);
            std::vector<long long> res(vx.size());
            for (std::size_t i = 0; i < vx.size(); ++i) res[i] = vx[i] - Tx[i] + Ty[i];
            table[x][y] = static_cast<std::uint16_t>(ring.encode(res));
        }
    }
    std::vector<std::string> labels(n);
    for (unsigned i = 0; i < n; ++i) {
        auto v = ring.decode(i);
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
        labels[i] = s;
    }
    std::string prov = "affine";
    return Rack::validate(std::move(table), std::move(labels), std::move(prov));
}

Rack affine_rack(unsigned modulus, long long t) {
    return affine_rack(std::vector<unsigned>{modulus}, {{t}});
}

Rack affine_rack_fq(unsigned q, unsigned a) {
    Fq F(q);
    if (a == 0 || a == 1) throw std::invalid_argument("affine rack needs T different from 0 and 1");
    const unsigned n = q;
    if (n > caps().rack_size) throw cap_exceeded("affine rack exceeds size cap");
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    unsigned one_minus_a = F.sub(1, a);
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            table[x][y] = static_cast<std::uint16_t>(F.add(F.mul(one_minus_a, x), F.mul(a, y)));
    return Rack::validate(std::move(table), {}, "affine_fq(" + std::to_string(q) + "," + std::to_string(a) + ")");
}

Rack power_rack(const Rack &X, long long j) {
    const unsigned n = X.size();
    std::vector<std::vector<std::uint16_t>> table(n);
    for (unsigned x = 0; x < n; ++x) {
        Permutation phi = X.translation(x).power(j);
        table[x] = std::vector<std::uint16_t>(phi.images().begin(), phi.images().end());
    }
    return Rack::validate(std::move(table), X.labels(), X.provenance() + "^[" + std::to_string(j) + "]");
}

Rack product_rack(const Rack &X, const Rack &Z) {
    const unsigned nx = X.size(), nz = Z.size(), n = nx * nz;
    if (n > caps().rack_size) throw cap_exceeded("product rack exceeds size cap");
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            unsigned x1 = a / nz, z1 = a % nz, x2 = b / nz, z2 = b % nz;
            table[a][b] = static_cast<std::uint16_t>(X.op(x1, x2) * nz + Z.op(z1, z2));
        }
    std::vector<std::string> labels(n);
    for (unsigned a = 0; a < n; ++a)
        labels[a] = "(" + X.labels()[a / nz] + ";" + Z.labels()[a % nz] + ")";
    return Rack::validate(std::move(table), std::move(labels), "product");
}

SubrackHandle subrack_closure(const Rack &X, const std::vector<std::uint16_t> &seeds) {
    if (seeds.empty()) throw std::invalid_argument("subrack_closure needs a nonempty seed set");
    std::vector<bool> in(X.size(), false);
    std::vector<std::uint16_t> work;
    for (auto s : seeds)
        if (!in[s]) { in[s] = true; work.push_back(s); }
    for (std::size_t head = 0; head < work.size(); ++head) {
        // closing under x▷y and x▷⁻¹y for both orders of the frontier element
        for (std::size_t k = 0; k <= head; ++k) {
            unsigned a = work[head], b = work[k];
            for (unsigned v : {(unsigned)X.op(a, b), (unsigned)X.op(b, a),
                               (unsigned)X.op_inv(a, b), (unsigned)X.op_inv(b, a)}) {
                if (!in[v]) { in[v] = true; work.push_back(static_cast<std::uint16_t>(v)); }
            }
        }
    }
    std::sort(work.begin(), work.end());
    return SubrackHandle{&X, std::move(work)};
}

std::vector<std::vector<std::uint16_t>> orbit_decomposition(const Rack &X) {
    const unsigned n = X.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::uint16_t>> orbits;
    for (unsigned s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        std::vector<std::uint16_t> orbit{static_cast<std::uint16_t>(s)};
        comp[s] = id;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            unsigned y = orbit[head];
            for (unsigned x = 0; x < n; ++x) {
                for (unsigned v : {(unsigned)X.op(x, y), (unsigned)X.op_inv(x, y)}) {
                    if (comp[v] < 0) {
                        comp[v] = id;
                        orbit.push_back(static_cast<std::uint16_t>(v));
                    }
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

PermGroup inner_group(const Rack &X) {
    std::vector<Permutation> gens;
    gens.reserve(X.size());
    for (unsigned x = 0; x < X.size(); ++x) gens.push_back(X.translation(x));
    PermGroup G(std::move(gens));
    G.elements();
    return G;
}

unsigned defect_rank(const Rack &X) {
    return static_cast<unsigned>(orbit_decomposition(X).size());
}

namespace {

// isomorphism invariant per element: sorted cycle type of φ_x plus whether
// x▷y=y counts (commutation degree)
struct IsoProfile {
    std::vector<std::pair<unsigned, unsigned>> cycle_type;
    unsigned commuting = 0;
    bool operator==(const IsoProfile &o) const = default;
    bool operator<(const IsoProfile &o) const {
        return std::tie(cycle_type, commuting) < std::tie(o.cycle_type, o.commuting);
    }
};

IsoProfile iso_profile(const Rack &X, unsigned x) {
    IsoProfile p;
    p.cycle_type = X.translation(x).cycle_type();
    for (unsigned y = 0; y < X.size(); ++y)
        if (X.op(x, y) == y) ++p.commuting;
    return p;
}

bool iso_backtrack(const Rack &X, const Rack &Y, std::vector<int> &map,
                   std::vector<bool> &used, unsigned depth,
                   const std::vector<std::vector<std::uint16_t>> &candidates) {
    const unsigned n = X.size();
    if (depth == n) return true;
    for (auto cand : candidates[depth]) {
        if (used[cand]) continue;
        bool ok = true;
        map[depth] = cand;
        // consistency against all previously mapped pairs
        for (unsigned j = 0; j <= depth && ok; ++j) {
            if (map[j] < 0) continue;
            if (map[X.op(depth, j)] >= 0 &&
                Y.op(cand, static_cast<unsigned>(map[j])) != map[X.op(depth, j)]) ok = false;
            if (ok && map[X.op(j, depth)] >= 0 &&
                Y.op(static_cast<unsigned>(map[j]), cand) != map[X.op(j, depth)]) ok = false;
        }
        if (ok) {
            used[cand] = true;
            if (iso_backtrack(X, Y, map, used, depth + 1, candidates)) return true;
            used[cand] = false;
        }
        map[depth] = -1;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::uint16_t>> is_isomorphic(const Rack &X, const Rack &Y) {
    if (X.size() != Y.size()) return std::nullopt;
    const unsigned n = X.size();
    if (n > caps().iso_size) throw cap_exceeded("isomorphism search size cap exceeded");
    std::vector<IsoProfile> px(n), py(n);
    for (unsigned i = 0; i < n; ++i) { px[i] = iso_profile(X, i); py[i] = iso_profile(Y, i); }
    {
        auto sx = px, sy = py;
        std::sort(sx.begin(), sx.end());
        std::sort(sy.begin(), sy.end());
        if (!(sx == sy)) return std::nullopt;
    }
    std::vector<std::vector<std::uint16_t>> candidates(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (px[i] == py[j]) candidates[i].push_back(static_cast<std::uint16_t>(j));
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    if (!iso_backtrack(X, Y, map, used, 0, candidates)) return std::nullopt;
    std::vector<std::uint16_t> out(n);
    for (unsigned i = 0; i < n; ++i) out[i] = static_cast<std::uint16_t>(map[i]);
    return out;
}

std::vector<SubrackHandle> enumerate_subracks(const Rack &X, unsigned max_size) {
    if (X.size() > caps().subrack_exhaustive)
        throw cap_exceeded("exhaustive subrack enumeration size cap exceeded");
    std::set<std::vector<std::uint16_t>> seen;
    std::vector<std::vector<std::uint16_t>> work;
    for (std::uint16_t s = 0; s < X.size(); ++s) {
        auto c = subrack_closure(X, {s}).members;
        if (c.size() <= max_size && seen.insert(c).second) work.push_back(c);
    }
    for (std::size_t head = 0; head < work.size(); ++head) {
        auto base = work[head];
        for (std::uint16_t y = 0; y < X.size(); ++y) {
            if (std::binary_search(base.begin(), base.end(), y)) continue;
            auto seeds = base;
            seeds.push_back(y);
            auto c = subrack_closure(X, seeds).members;
            if (c.size() <= max_size && seen.insert(c).second) work.push_back(c);
        }
    }
    std::vector<SubrackHandle> out;
    out.reserve(seen.size());
    for (auto &m : seen) out.push_back(SubrackHandle{&X, m});
    return out;
}

namespace {

void bron_kerbosch(const std::vector<std::vector<bool>> &adj, std::vector<std::uint16_t> &R,
                   std::vector<std::uint16_t> P, std::vector<std::uint16_t> Xs,
                   std::vector<std::vector<std::uint16_t>> &out) {
    if (P.empty() && Xs.empty()) {
        out.push_back(R);
        if (out.size() > caps().clique_count)
            throw cap_exceeded("abelian subrack (clique) count exceeds cap");
        return;
    }
    // pivot: vertex of P ∪ X maximizing neighbors in P
    unsigned pivot = P.empty() ? Xs[0] : P[0];
    std::size_t best = 0;
    for (auto cand : {&P, &Xs})
        for (auto v : *cand) {
            std::size_t cnt = 0;
            for (auto w : P)
                if (adj[v][w]) ++cnt;
            if (cnt > best) { best = cnt; pivot = v; }
        }
    std::vector<std::uint16_t> ext;
    for (auto v : P)
        if (!adj[pivot][v]) ext.push_back(v);
    for (auto v : ext) {
        std::vector<std::uint16_t> P2, X2;
        for (auto w : P)
            if (adj[v][w]) P2.push_back(w);
        for (auto w : Xs)
            if (adj[v][w]) X2.push_back(w);
        R.push_back(v);
        bron_kerbosch(adj, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        Xs.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<std::uint16_t>> abelian_subracks(const Rack &X) {
    const unsigned n = X.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y)
            if (x != y && X.op(x, y) == y && X.op(y, x) == x) adj[x][y] = true;
    std::vector<std::uint16_t> R, P(n), Xs;
    std::iota(P.begin(), P.end(), 0);
    std::vector<std::vector<std::uint16_t>> out;
    bron_kerbosch(adj, R, std::move(P), std::move(Xs), out);
    for (auto &c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

Rack restrict_rack(const Rack &X, const std::vector<std::uint16_t> &members) {
    std::vector<int> pos(X.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
    const auto k = static_cast<unsigned>(members.size());
    std::vector<std::vector<std::uint16_t>> table(k, std::vector<std::uint16_t>(k));
    std::vector<std::string> labels(k);
    for (unsigned i = 0; i < k; ++i) {
        labels[i] = X.labels()[members[i]];
        for (unsigned j = 0; j < k; ++j) {
            int v = pos[X.op(members[i], members[j])];
            if (v < 0) throw std::invalid_argument("member set is not closed under the operation");
            table[i][j] = static_cast<std::uint16_t>(v);
        }
    }
    return Rack::validate(std::move(table), std::move(labels), X.provenance() + "|S");
}

TorusRack torus_rack(unsigned n, unsigned q, unsigned a) {
    Fq F(q);
    if (a == 0) throw field_error("a must be nonzero");
    unsigned xi = F.primitive_element();
    const unsigned m = q - 1;
    // tuples x ∈ (ℤ/m)^n with Σxᵢ ≡ 0; μ_x = n_a·ξ_x as a matrix
    std::vector<std::vector<unsigned>> tuples;
    std::vector<unsigned> v(n, 0);
    auto advance = [&]() {
        for (unsigned i = n; i-- > 0;) {
            if (++v[i] < m) return true;
            v[i] = 0;
        }
        return false;
    };
    do {
        unsigned s = 0;
        for (auto c : v) s = (s + c) % m;
        if (s == 0) tuples.push_back(v);
    } while (advance());

    std::vector<FqMatrix> mats;
    for (const auto &t : tuples) {
        FqMatrix M{n, q, std::vector<unsigned>(static_cast<std::size_t>(n) * n, 0)};
        // companion of X^n − a times diag(ξ^{x_i}): subdiagonal ξ^{x_i}, corner a·ξ^{x_n}
        for (unsigned i = 0; i + 1 < n; ++i) M.at(i + 1, i) = F.pow(xi, t[i]);
        M.at(0, n - 1) = F.mul(a, F.pow(xi, t[n - 1]));
        mats.push_back(std::move(M));
    }
    auto perms = matrix_group_to_perm(n, q, mats, MatrixAction::vectors);
    std::unordered_map<Permutation, std::uint16_t, PermHash> index;
    for (std::uint16_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], i);
    const auto sz = static_cast<unsigned>(perms.size());
    std::vector<std::vector<std::uint16_t>> table(sz, std::vector<std::uint16_t>(sz));
    std::vector<std::string> labels(sz);
    for (unsigned i = 0; i < sz; ++i) {
        std::string s = "mu(";
        for (unsigned k = 0; k < n; ++k) s += (k ? "," : "") + std::to_string(tuples[i][k]);
        labels[i] = s + ")";
        for (unsigned j = 0; j < sz; ++j) table[i][j] = index.at(conjugate(perms[i], perms[j]));
    }
    Rack realized = Rack::validate(std::move(table), std::move(labels),
                                   "torus(n=" + std::to_string(n) + ",q=" + std::to_string(q) +
                                       ",a=" + std::to_string(a) + ")");

    // predicted model: Q_{(ℤ/(q−1))^{n−1}, g}, g(x₁,…,x_{n−1}) = (−Σxᵢ, x₁,…,x_{n−2})
    std::vector<unsigned> moduli(n - 1, m);
    std::vector<std::vector<long long>> g(n - 1, std::vector<long long>(n - 1, 0));
    for (unsigned j = 0; j < n - 1; ++j) g[0][j] = -1;
    for (unsigned i = 1; i < n - 1; ++i) g[i][i - 1] = 1;
    Rack model = affine_rack(moduli, g);
    return TorusRack{std::move(realized), std::move(model)};
}

bool affine_model_typeD_certificate(const std::vector<std::vector<long long>> &g,
                                    unsigned modulus, const std::vector<long long> &x) {
    const auto n = static_cast<unsigned>(g.size());
    const long long m = modulus;
    auto normv = [&](std::vector<long long> v) {
        for (auto &c : v) c = ((c % m) + m) % m;
        return v;
    };
    // invertibility of g over ℤ/m: image of the induced map hits everything;
    // column-reduce [1−g] over ℤ/m and test membership of x via exhaustive
    // span enumeration for small n·m, else Howell-style reduction.
    // Here n·m stays desk-scale: enumerate the subgroup Im(1−g).
    std::vector<std::vector<long long>> one_minus_g(n, std::vector<long long>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) one_minus_g[i][j] = (i == j ? 1 : 0) - g[i][j];

    // check invertibility of g mod every prime power in m via determinant gcd
    // (desk scale: compute det via fraction-free elimination over ℤ)
    {
        std::vector<std::vector<long long>> a = g;
        long long det = 1;
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = col;
            while (piv < n && a[piv][col] == 0) ++piv;
            if (piv == n) { det = 0; break; }
            if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
            for (unsigned r = col + 1; r < n; ++r) {
                while (a[r][col] != 0) {  // integer gcd elimination
                    long long qout = a[col][col] / a[r][col];
                    for (unsigned j = col; j < n; ++j) a[col][j] -= qout * a[r][j];
                    std::swap(a[col], a[r]);
                    det = -det;
                }
            }
            det *= a[col][col];
        }
        if (std::gcd(std::abs(det) % m, m) != 1 && m > 1)
            if (std::gcd(((det % m) + m) % m, (long long)m) != 1)
                throw std::invalid_argument("g is not invertible mod m");
    }

    // orbit closure of the column span of (1−g) over ℤ/m
    std::set<std::vector<long long>> span;
    std::vector<std::vector<long long>> work{normv(std::vector<long long>(n, 0))};
    span.insert(work[0]);
    for (std::size_t head = 0; head < work.size(); ++head) {
        for (unsigned j = 0; j < n; ++j) {
            auto next = work[head];
            for (unsigned i = 0; i < n; ++i) next[i] += one_minus_g[i][j];
            next = normv(next);
            if (span.insert(next).second) work.push_back(next);
        }
    }
    if (span.count(normv(x))) return false;  // x ∈ Im(1−g)

    // alternating sum x − gx + g²x − g³x ≠ 0
    std::vector<long long> acc(n, 0), cur = x;
    for (int k = 0; k < 4; ++k) {
        for (unsigned i = 0; i < n; ++i) acc[i] += (k % 2 == 0 ? 1 : -1) * cur[i];
        cur = mat_apply(g, cur);
    }
    acc = normv(acc);
    for (auto c : acc)
        if (c != 0) return true;
    return false;
}

}  // namespace rackforge
