#include "rackforge/nichols.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rackforge/caps.hpp"

namespace rackforge {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// ---- scalar adapters: the engine runs over ℚ when m ≤ 2, ℚ(ζ_m) otherwise ----

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<mpq_class> {
    static mpq_class zero(unsigned) { return mpq_class(0); }
    static mpq_class one(unsigned) { return mpq_class(1); }
    static mpq_class root(unsigned m, unsigned long e) {
        return (m <= 1 || e % m == 0) ? mpq_class(1) : mpq_class(-1);
    }
    static bool is_zero(const mpq_class &v) { return v == 0; }
    static mpq_class inv(const mpq_class &v) { return mpq_class(1) / v; }
};

template <>
struct ScalarOps<CycScalar> {
    static CycScalar zero(unsigned m) { return CycScalar(m); }
    static CycScalar one(unsigned m) { return CycScalar::from_rational(m, 1); }
    static CycScalar root(unsigned m, unsigned long e) { return CycScalar::root_power(m, e); }
    static bool is_zero(const CycScalar &v) { return v.is_zero(); }
    static CycScalar inv(const CycScalar &v) { return v.inverse(); }
};

// reduced word for σ as generator indices; applying the word left to right
// (each entry i swaps positions i, i+1 through the braiding) realizes ρ(M(σ))
std::vector<unsigned> reduced_word(std::vector<unsigned> sigma) {
    std::vector<unsigned> word;
    const unsigned n = static_cast<unsigned>(sigma.size());
    for (;;) {
        unsigned i = 0;
        while (i + 1 < n && sigma[i] < sigma[i + 1]) ++i;
        if (i + 1 >= n) break;
        word.push_back(i);
        std::swap(sigma[i], sigma[i + 1]);
    }
    return word;
}

// tuple index arithmetic, first factor most significant
struct TupleCodec {
    unsigned n, deg;
    std::uint64_t cells;
    TupleCodec(unsigned n_, unsigned deg_) : n(n_), deg(deg_), cells(ipow(n_, deg_)) {}
    void decode(std::uint64_t idx, std::vector<unsigned> &t) const {
        t.resize(deg);
        for (unsigned i = deg; i-- > 0;) {
            t[i] = static_cast<unsigned>(idx % n);
            idx /= n;
        }
    }
    std::uint64_t encode(const std::vector<unsigned> &t) const {
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < deg; ++i) idx = idx * n + t[i];
        return idx;
    }
};

}  // namespace

Braiding braiding(const BraidedSpace &V) {
    const Rack &X = *V.X;
    const unsigned n = X.size(), m = V.q.m;
    if (V.q.exp.size() != n) throw std::invalid_argument("cocycle size mismatch");
    Braiding c;
    c.n = n;
    c.m = m;
    c.row_of_col.resize(static_cast<std::size_t>(n) * n);
    c.exp_of_col.resize(static_cast<std::size_t>(n) * n);
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            c.row_of_col[x * n + y] = X.op(x, y) * n + x;
            c.exp_of_col[x * n + y] = V.q.exp[x][y] % m;
        }
    // braid equation on basis triples, tracked monomially
    auto apply = [&](unsigned pos, std::array<unsigned, 3> &t, unsigned &e) {
        unsigned x = t[pos], y = t[pos + 1];
        e = (e + V.q.exp[x][y]) % m;
        t[pos] = X.op(x, y);
        t[pos + 1] = x;
    };
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
            for (unsigned d = 0; d < n; ++d) {
                std::array<unsigned, 3> t1{a, b, d}, t2{a, b, d};
                unsigned e1 = 0, e2 = 0;
                apply(0, t1, e1); apply(1, t1, e1); apply(0, t1, e1);
                apply(1, t2, e2); apply(0, t2, e2); apply(1, t2, e2);
                if (t1 != t2 || e1 != e2)
                    throw std::logic_error("braid equation fails; cocycle law violated");
            }
    return c;
}

std::vector<std::vector<std::pair<std::uint32_t, CycScalar>>> symmetrizer(const BraidedSpace &V,
                                                                          unsigned n) {
    const Rack &X = *V.X;
    const unsigned nx = X.size(), m = V.q.m;
    TupleCodec codec(nx, n);
    if (codec.cells > caps().symmetrizer_cells)
        throw cap_exceeded("symmetrizer exceeds the oracle-scale cap");
    const auto T = static_cast<std::size_t>(codec.cells);
    std::vector<std::map<std::uint32_t, CycScalar>> cols(T);

    std::vector<unsigned> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<unsigned> tup;
    do {
        auto word = reduced_word(sigma);
        for (std::size_t t = 0; t < T; ++t) {
            codec.decode(t, tup);
            unsigned long e = 0;
            for (unsigned i : word) {
                unsigned x = tup[i], y = tup[i + 1];
                e += V.q.exp[x][y];
                tup[i] = X.op(x, y);
                tup[i + 1] = x;
            }
            auto row = static_cast<std::uint32_t>(codec.encode(tup));
            auto it = cols[t].find(row);
            if (it == cols[t].end())
                cols[t].emplace(row, CycScalar::root_power(m, e));
            else
                it->second += CycScalar::root_power(m, e);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    std::vector<std::vector<std::pair<std::uint32_t, CycScalar>>> out(T);
    for (std::size_t t = 0; t < T; ++t) {
        for (auto &[row, val] : cols[t])
            if (!val.is_zero()) out[t].emplace_back(row, val);
    }
    return out;
}

namespace {

// ---- exact rank of an integer matrix: mod-p elimination certified both ways
// (a nonzero r×r minor mod p bounds rank from below; an integrally verified
// kernel of dimension ncols−r bounds it from above) ----

constexpr std::uint64_t kP = 2147483647ULL;  // 2³¹ − 1

struct ModPRref {
    std::size_t ncols;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::uint32_t> pivot_cols;
    std::vector<int> pivot_of_col;

    explicit ModPRref(std::size_t nc) : ncols(nc), pivot_of_col(nc, -1) {}

    static std::uint64_t inv_mod(std::uint64_t a) {
        // Fermat: a^(p−2)
        std::uint64_t r = 1, b = a % kP, e = kP - 2;
        while (e) {
            if (e & 1) r = r * b % kP;
            b = b * b % kP;
            e >>= 1;
        }
        return r;
    }

    bool add_row(std::vector<std::uint64_t> w) {
        for (std::uint32_t c = 0; c < ncols; ++c) {
            if (!w[c]) continue;
            int pr = pivot_of_col[c];
            if (pr < 0) {
                std::uint64_t s = inv_mod(w[c]);
                for (auto &v : w) v = v * s % kP;
                // clear the tail at later pivot columns, keeping full RREF
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    auto pc = pivot_cols[r];
                    if (pc > c && w[pc]) {
                        std::uint64_t f = kP - w[pc];
                        for (std::size_t k = pc; k < ncols; ++k)
                            w[k] = (w[k] + f * rows[r][k]) % kP;
                    }
                }
                for (auto &row : rows)
                    if (row[c]) {
                        std::uint64_t f = kP - row[c];
                        for (std::size_t k = c; k < ncols; ++k)
                            row[k] = (row[k] + f * w[k]) % kP;
                    }
                pivot_of_col[c] = static_cast<int>(rows.size());
                rows.push_back(std::move(w));
                pivot_cols.push_back(c);
                return true;
            }
            std::uint64_t f = kP - w[c];
            const auto &pv = rows[pr];
            for (std::size_t k = c; k < ncols; ++k) w[k] = (w[k] + f * pv[k]) % kP;
        }
        return false;
    }

    std::vector<std::vector<std::uint64_t>> kernel() const {
        std::vector<std::vector<std::uint64_t>> out;
        for (std::uint32_t f = 0; f < ncols; ++f) {
            if (pivot_of_col[f] >= 0) continue;
            std::vector<std::uint64_t> v(ncols, 0);
            v[f] = 1;
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (rows[r][f]) v[pivot_cols[r]] = kP - rows[r][f];
            out.push_back(std::move(v));
        }
        return out;
    }
};

// balanced rational reconstruction of a mod p with |num|,|den| ≤ √(p/2)
bool rat_reconstruct(std::uint64_t a, long long &num, long long &den) {
    long long r0 = static_cast<long long>(kP), r1 = static_cast<long long>(a % kP);
    long long t0 = 0, t1 = 1;
    const long long bound = 46340;
    while (r1 > bound) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    if (t1 == 0 || std::abs(t1) > bound) return false;
    num = t1 < 0 ? -r1 : r1;
    den = std::abs(t1);
    return true;
}

using IntRows = std::vector<std::vector<std::pair<std::uint32_t, long>>>;

// nullopt when certification fails (caller falls back to the exact field path)
std::optional<unsigned long> rank_certified(const IntRows &rows, std::size_t ncols) {
    ModPRref ref(ncols);
    std::vector<std::uint64_t> dense(ncols);
    for (const auto &r : rows) {
        std::fill(dense.begin(), dense.end(), 0);
        for (auto [c, v] : r) dense[c] = static_cast<std::uint64_t>(((v % (long long)kP) + (long long)kP) % (long long)kP);
        ref.add_row(dense);
    }
    auto kern = ref.kernel();
    // lift each kernel vector to a small rational vector and verify exactly
    for (const auto &kv : kern) {
        std::vector<mpq_class> lifted(ncols);
        mpz_class lcm_den = 1;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (!kv[c]) continue;
            long long num, den;
            if (!rat_reconstruct(kv[c], num, den)) return std::nullopt;
            lifted[c] = mpq_class(static_cast<long>(num), static_cast<long>(den));
            lifted[c].canonicalize();
            lcm_den = lcm(lcm_den, mpz_class(static_cast<long>(den)));
        }
        // integer form
        std::vector<mpz_class> iv(ncols);
        for (std::size_t c = 0; c < ncols; ++c)
            if (lifted[c] != 0) iv[c] = mpz_class(lifted[c] * lcm_den);
        for (const auto &r : rows) {
            mpz_class acc = 0;
            for (auto [c, v] : r) acc += v * iv[c];
            if (acc != 0) return std::nullopt;
        }
    }
    return static_cast<unsigned long>(ncols - kern.size());
}

// ---- generic exact REF over a field scalar, dense rows ----

template <class S>
struct FieldRef {
    unsigned m;
    std::size_t ncols;
    std::vector<std::vector<S>> rows;
    std::vector<std::uint32_t> pivot_cols;
    std::vector<int> pivot_of_col;

    FieldRef(unsigned m_, std::size_t nc) : m(m_), ncols(nc), pivot_of_col(nc, -1) {}

    bool add_row(std::vector<S> w) {
        for (std::uint32_t c = 0; c < ncols; ++c) {
            if (ScalarOps<S>::is_zero(w[c])) continue;
            int pr = pivot_of_col[c];
            if (pr < 0) {
                S s = ScalarOps<S>::inv(w[c]);
                for (auto &v : w) v = v * s;
                // clear the tail at later pivot columns, keeping full RREF
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    auto pc = pivot_cols[r];
                    if (pc > c && !ScalarOps<S>::is_zero(w[pc])) {
                        S f = w[pc];
                        for (std::size_t k = pc; k < ncols; ++k) w[k] -= f * rows[r][k];
                    }
                }
                for (auto &row : rows)
                    if (!ScalarOps<S>::is_zero(row[c])) {
                        S f = row[c];
                        for (std::size_t k = c; k < ncols; ++k) row[k] -= f * w[k];
                    }
                pivot_of_col[c] = static_cast<int>(rows.size());
                rows.push_back(std::move(w));
                pivot_cols.push_back(c);
                return true;
            }
            S f = w[c];
            const auto &pv = rows[pr];
            for (std::size_t k = c; k < ncols; ++k) w[k] -= f * pv[k];
        }
        return false;
    }

    std::vector<std::vector<S>> kernel() const {
        std::vector<std::vector<S>> out;
        for (std::uint32_t f = 0; f < ncols; ++f) {
            if (pivot_of_col[f] >= 0) continue;
            std::vector<S> v(ncols, ScalarOps<S>::zero(m));
            v[f] = ScalarOps<S>::one(m);
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (!ScalarOps<S>::is_zero(rows[r][f])) v[pivot_cols[r]] = -rows[r][f];
            out.push_back(std::move(v));
        }
        return out;
    }
};

unsigned long symmetrizer_rank_impl(const BraidedSpace &V, unsigned n) {
    auto cols = symmetrizer(V, n);
    const std::size_t T = cols.size();
    if (V.q.m <= 2) {
        IntRows rows(T);
        bool integral = true;
        // transpose columns to rows; entries are sums of ±1 here
        for (std::size_t c = 0; c < T && integral; ++c)
            for (const auto &[r, val] : cols[c]) {
                mpq_class q = val.rational();
                if (q.get_den() != 1) { integral = false; break; }
                rows[r].emplace_back(static_cast<std::uint32_t>(c),
                                     static_cast<long>(q.get_num().get_si()));
            }
        if (integral)
            if (auto rk = rank_certified(rows, T)) return *rk;
    }
    FieldRef<CycScalar> ref(V.q.m, T);
    std::vector<CycScalar> dense;
    std::vector<std::vector<std::pair<std::uint32_t, CycScalar>>> rows(T);
    for (std::size_t c = 0; c < T; ++c)
        for (const auto &[r, val] : cols[c]) rows[r].emplace_back(static_cast<std::uint32_t>(c), val);
    for (std::size_t r = 0; r < T; ++r) {
        dense.assign(T, CycScalar(V.q.m));
        for (auto &[c, val] : rows[r]) dense[c] = val;
        ref.add_row(std::move(dense));
    }
    return static_cast<unsigned long>(ref.rows.size());
}

}  // namespace

unsigned long symmetrizer_rank(const BraidedSpace &V, unsigned n) {
    if (n == 0) return 1;
    if (n == 1) return V.dim();
    return symmetrizer_rank_impl(V, n);
}

unsigned long symmetrizer_kernel_dim(const BraidedSpace &V, unsigned n) {
    return static_cast<unsigned long>(ipow(V.dim(), n)) - symmetrizer_rank(V, n);
}

namespace {

// ---- the incremental derivation engine ----

template <class S>
struct DerivEngine {
    const Rack &X;
    const ScalarCocycle &q;
    unsigned n;  // |X|
    unsigned m;
    unsigned long d1 = 0, d2 = 0;  // dims of B_{deg−1}, B_{deg−2}
    // deriv[z]: d2 × d1 (∂_z on B_{deg−1}); mult[x]: d1 × d2 (x·(−) into B_{deg−1})
    std::vector<std::vector<std::vector<S>>> deriv, mult;

    DerivEngine(const Rack &x, const ScalarCocycle &qq) : X(x), q(qq), n(x.size()), m(qq.m) {
        // degree-1 data: B₁ = ℂX over B₀ = ℂ
        d1 = n;
        d2 = 1;
        deriv.assign(n, std::vector<std::vector<S>>(1, std::vector<S>(n, ScalarOps<S>::zero(m))));
        for (unsigned y = 0; y < n; ++y) deriv[y][0][y] = ScalarOps<S>::one(m);
        mult.assign(n, std::vector<std::vector<S>>(n, std::vector<S>(1, ScalarOps<S>::zero(m))));
        for (unsigned x0 = 0; x0 < n; ++x0) mult[x0][x0][0] = ScalarOps<S>::one(m);
    }

    // advance one degree; returns the new dimension
    unsigned long step() {
        const std::size_t L = static_cast<std::size_t>(n) * d1;
        struct Row {
            std::vector<S> v;      // reduced, leading coefficient 1
            std::vector<S> expr;   // coordinates in the pivot-candidate basis
            std::uint32_t lead;
        };
        std::vector<Row> ref;
        std::vector<int> pivot_of_lead(L, -1);
        std::vector<std::vector<S>> pivot_w;        // original D-images of pivots
        std::vector<std::uint32_t> pivot_cand;      // candidate id of each pivot
        // expansion of every candidate in the new basis
        std::vector<std::vector<S>> expansion(L);

        std::vector<S> w(L, ScalarOps<S>::zero(m)), u(d1, ScalarOps<S>::zero(m));
        for (unsigned x = 0; x < n; ++x) {
            for (unsigned long j = 0; j < d1; ++j) {
                std::fill(w.begin(), w.end(), ScalarOps<S>::zero(m));
                for (unsigned z = 0; z < n; ++z) {
                    unsigned y = X.op(x, z);
                    // u = mult[x] · (deriv[z] column j), scaled by q_{x,z}
                    S s = ScalarOps<S>::root(m, q.exp[x][z]);
                    for (unsigned long r = 0; r < d1; ++r) {
                        S acc = ScalarOps<S>::zero(m);
                        for (unsigned long k = 0; k < d2; ++k) {
                            if (ScalarOps<S>::is_zero(deriv[z][k][j])) continue;
                            acc += mult[x][r][k] * deriv[z][k][j];
                        }
                        u[r] = acc * s;
                    }
                    for (unsigned long r = 0; r < d1; ++r)
                        w[static_cast<std::size_t>(y) * d1 + r] += u[r];
                }
                w[static_cast<std::size_t>(x) * d1 + j] += ScalarOps<S>::one(m);

                // reduce with expression tracking
                std::uint32_t cand = static_cast<std::uint32_t>(x * d1 + j);
                std::vector<S> orig = w;
                std::vector<S> acc_expr(pivot_w.size(), ScalarOps<S>::zero(m));
                std::uint32_t lead = 0;
                bool zero = false;
                for (;;) {
                    while (lead < L && ScalarOps<S>::is_zero(w[lead])) ++lead;
                    if (lead == L) { zero = true; break; }
                    int pr = pivot_of_lead[lead];
                    if (pr < 0) break;
                    S f = w[lead];
                    const auto &row = ref[pr];
                    for (std::size_t k = lead; k < L; ++k)
                        if (!ScalarOps<S>::is_zero(row.v[k])) w[k] -= f * row.v[k];
                    for (std::size_t k = 0; k < row.expr.size(); ++k)
                        if (!ScalarOps<S>::is_zero(row.expr[k])) acc_expr[k] += f * row.expr[k];
                }
                if (zero) {
                    expansion[cand] = std::move(acc_expr);
                    continue;
                }
                // new pivot
                S ell = w[lead];
                S inv = ScalarOps<S>::inv(ell);
                for (auto &vv : w) vv = vv * inv;
                std::vector<S> expr(pivot_w.size() + 1, ScalarOps<S>::zero(m));
                for (std::size_t k = 0; k < acc_expr.size(); ++k) expr[k] = -(acc_expr[k] * inv);
                expr[pivot_w.size()] = inv;
                pivot_of_lead[lead] = static_cast<int>(ref.size());
                ref.push_back(Row{w, std::move(expr), lead});
                // expansion of this candidate is the new basis unit
                std::vector<S> unit(pivot_w.size() + 1, ScalarOps<S>::zero(m));
                unit[pivot_w.size()] = ScalarOps<S>::one(m);
                expansion[cand] = std::move(unit);
                pivot_w.push_back(std::move(orig));
                pivot_cand.push_back(cand);
            }
        }

        const unsigned long dn = static_cast<unsigned long>(pivot_w.size());
        // new derivation matrices: block y of each pivot's original image
        std::vector<std::vector<std::vector<S>>> new_deriv(
            n, std::vector<std::vector<S>>(d1, std::vector<S>(dn, ScalarOps<S>::zero(m))));
        for (unsigned long b = 0; b < dn; ++b)
            for (unsigned y = 0; y < n; ++y)
                for (unsigned long r = 0; r < d1; ++r)
                    new_deriv[y][r][b] = pivot_w[b][static_cast<std::size_t>(y) * d1 + r];
        // new multiplication matrices from the recorded expansions
        std::vector<std::vector<std::vector<S>>> new_mult(
            n, std::vector<std::vector<S>>(dn, std::vector<S>(d1, ScalarOps<S>::zero(m))));
        for (unsigned x = 0; x < n; ++x)
            for (unsigned long j = 0; j < d1; ++j) {
                const auto &e = expansion[x * d1 + j];
                for (std::size_t b = 0; b < e.size(); ++b) new_mult[x][b][j] = e[b];
            }
        d2 = d1;
        d1 = dn;
        deriv = std::move(new_deriv);
        mult = std::move(new_mult);
        return dn;
    }
};

template <class S>
NicholsReport hilbert_series_impl(const BraidedSpace &V, unsigned max_degree) {
    NicholsReport rep;
    rep.dims.push_back(1);
    if (max_degree == 0) { rep.truncated = true; return rep; }
    rep.dims.push_back(V.dim());
    DerivEngine<S> engine(*V.X, V.q);
    unsigned degree_cap = std::min(max_degree, caps().nichols_degree);
    for (unsigned deg = 2; deg <= degree_cap; ++deg) {
        unsigned long d = engine.step();
        rep.dims.push_back(d);
        if (d == 0) {
            // the algebra is generated in degree 1, so the next component is
            // the image of ℂX ⊗ 0 and every later dimension vanishes
            rep.finite = true;
            for (auto v : rep.dims) rep.total += v;
            rep.top = static_cast<unsigned>(rep.dims.size()) - 2;
            return rep;
        }
        if (d > caps().nichols_dim) { rep.truncated = true; return rep; }
    }
    rep.truncated = true;
    return rep;
}

}  // namespace

NicholsReport hilbert_series(const BraidedSpace &V, unsigned max_degree) {
    braiding(V);  // construction-time braid-equation assertion
    if (V.q.m <= 2) return hilbert_series_impl<mpq_class>(V, max_degree);
    return hilbert_series_impl<CycScalar>(V, max_degree);
}

namespace {

// quadratic cover dims by the quotient recursion
// A_n = (V ⊗ A_{n−1}) / image(K₂ ⊗ A_{n−2})
template <class S>
std::vector<unsigned long> cover_dims_impl(const BraidedSpace &V, unsigned max_degree,
                                           const std::vector<std::vector<S>> &k2) {
    const Rack &X = *V.X;
    const unsigned n = X.size(), m = V.q.m;
    std::vector<unsigned long> dims{1};
    if (max_degree == 0) return dims;
    dims.push_back(n);
    unsigned long d1 = n, d2 = 1;
    // mult[x]: d1 × d2 in quotient coordinates
    std::vector<std::vector<std::vector<S>>> mult(
        n, std::vector<std::vector<S>>(n, std::vector<S>(1, ScalarOps<S>::zero(m))));
    for (unsigned x = 0; x < n; ++x) mult[x][x][0] = ScalarOps<S>::one(m);

    for (unsigned deg = 2; deg <= max_degree; ++deg) {
        const std::size_t L = static_cast<std::size_t>(n) * d1;
        FieldRef<S> rel(m, L);
        std::vector<S> w(L, ScalarOps<S>::zero(m));
        for (const auto &kappa : k2) {
            for (unsigned long a = 0; a < d2; ++a) {
                std::fill(w.begin(), w.end(), ScalarOps<S>::zero(m));
                bool nonzero = false;
                for (unsigned u = 0; u < n; ++u)
                    for (unsigned v = 0; v < n; ++v) {
                        const S &kc = kappa[static_cast<std::size_t>(u) * n + v];
                        if (ScalarOps<S>::is_zero(kc)) continue;
                        for (unsigned long r = 0; r < d1; ++r) {
                            const S &mv = mult[v][r][a];
                            if (ScalarOps<S>::is_zero(mv)) continue;
                            w[static_cast<std::size_t>(u) * d1 + r] += kc * mv;
                            nonzero = true;
                        }
                    }
                if (nonzero) rel.add_row(w);
            }
        }
        unsigned long rank = static_cast<unsigned long>(rel.rows.size());
        unsigned long dn = static_cast<unsigned long>(L) - rank;
        // quotient coordinates = non-leading positions, ascending
        std::vector<long> coord_of_pos(L, -1);
        {
            long idx = 0;
            for (std::size_t pos = 0; pos < L; ++pos)
                if (rel.pivot_of_col[pos] < 0) coord_of_pos[pos] = idx++;
        }
        std::vector<std::vector<std::vector<S>>> new_mult(
            n, std::vector<std::vector<S>>(dn, std::vector<S>(d1, ScalarOps<S>::zero(m))));
        std::vector<S> unit(L, ScalarOps<S>::zero(m));
        for (unsigned x = 0; x < n; ++x)
            for (unsigned long j = 0; j < d1; ++j) {
                std::fill(unit.begin(), unit.end(), ScalarOps<S>::zero(m));
                unit[static_cast<std::size_t>(x) * d1 + j] = ScalarOps<S>::one(m);
                // reduce against the relation REF
                for (std::size_t pos = 0; pos < L; ++pos) {
                    if (ScalarOps<S>::is_zero(unit[pos])) continue;
                    int pr = rel.pivot_of_col[pos];
                    if (pr < 0) continue;
                    S f = unit[pos];
                    const auto &rv = rel.rows[pr];
                    for (std::size_t k = pos; k < L; ++k)
                        if (!ScalarOps<S>::is_zero(rv[k])) unit[k] -= f * rv[k];
                }
                for (std::size_t pos = 0; pos < L; ++pos)
                    if (coord_of_pos[pos] >= 0 && !ScalarOps<S>::is_zero(unit[pos]))
                        new_mult[x][coord_of_pos[pos]][j] = unit[pos];
            }
        dims.push_back(dn);
        d2 = d1;
        d1 = dn;
        mult = std::move(new_mult);
        if (dn == 0 || dn > caps().nichols_dim) break;
    }
    return dims;
}

template <class S>
std::vector<std::vector<S>> q2_kernel(const BraidedSpace &V) {
    const unsigned n = V.dim(), m = V.q.m;
    auto cols = symmetrizer(V, 2);
    const std::size_t T = cols.size();
    // rows of Q₂ (each has ≤ 2 entries)
    FieldRef<S> ref(m, T);
    std::vector<std::vector<std::pair<std::uint32_t, CycScalar>>> rows(T);
    for (std::size_t c = 0; c < T; ++c)
        for (const auto &[r, val] : cols[c]) rows[r].emplace_back(static_cast<std::uint32_t>(c), val);
    std::vector<S> dense(T, ScalarOps<S>::zero(m));
    for (std::size_t r = 0; r < T; ++r) {
        std::fill(dense.begin(), dense.end(), ScalarOps<S>::zero(m));
        for (auto &[c, val] : rows[r]) {
            if constexpr (std::is_same_v<S, mpq_class>)
                dense[c] = val.rational();
            else
                dense[c] = val;
        }
        ref.add_row(dense);
    }
    (void)n;
    return ref.kernel();
}

}  // namespace

std::vector<unsigned long> quadratic_cover_dims(const BraidedSpace &V, unsigned max_degree) {
    if (max_degree > caps().nichols_degree)
        throw cap_exceeded("quadratic cover degree exceeds the degree cap");
    if (V.q.m <= 2) return cover_dims_impl<mpq_class>(V, max_degree, q2_kernel<mpq_class>(V));
    return cover_dims_impl<CycScalar>(V, max_degree, q2_kernel<CycScalar>(V));
}

bool poincare_twist_check(const BraidedSpace &V, const std::vector<std::vector<std::uint32_t>> &phi,
                          unsigned max_degree) {
    ScalarCocycle twisted = twist(*V.X, V.q, phi);
    BraidedSpace W{V.X, std::move(twisted)};
    NicholsReport a = hilbert_series(V, max_degree);
    NicholsReport b = hilbert_series(W, max_degree);
    std::size_t upto = std::min(a.dims.size(), b.dims.size());
    for (std::size_t i = 0; i < upto; ++i)
        if (a.dims[i] != b.dims[i]) return false;
    return a.finite == b.finite || a.truncated || b.truncated;
}

}  // namespace rackforge
