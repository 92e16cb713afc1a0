#include "rackforge/fq.hpp"

#include <algorithm>
#include <map>

#include "rackforge/caps.hpp"

namespace rackforge {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed irreducible polynomials (Conway) for the supported prime powers,
// as coefficient vectors c₀ + c₁x + … + x^deg (monic, leading 1 included).
const std::map<unsigned, std::vector<unsigned>> &poly_table() {
    static const std::map<unsigned, std::vector<unsigned>> table = {
        {4, {1, 1, 1}},           // x² + x + 1 over F₂
        {8, {1, 1, 0, 1}},        // x³ + x + 1
        {9, {2, 2, 1}},           // x² + 2x + 2 over F₃
        {16, {1, 1, 0, 0, 1}},    // x⁴ + x + 1
        {25, {2, 4, 1}},          // x² + 4x + 2 over F₅
        {27, {1, 2, 0, 1}},       // x³ + 2x + 1 over F₃
        {32, {1, 0, 1, 0, 0, 1}}, // x⁵ + x² + 1
        {49, {3, 6, 1}},          // x² + 6x + 3 over F₇
    };
    return table;
}

}  // namespace

Fq::Fq(unsigned q) : q_(q) {
    std::vector<unsigned> modpoly;
    if (is_prime(q)) {
        p_ = q;
        deg_ = 1;
    } else {
        auto it = poly_table().find(q);
        if (it == poly_table().end())
            throw field_error("unsupported field size " + std::to_string(q) +
                              " (prime, or prime power in {4,8,9,16,25,27,32,49})");
        modpoly = it->second;
        deg_ = static_cast<unsigned>(modpoly.size() - 1);
        p_ = 2;
        while (true) {
            unsigned t = 1;
            for (unsigned i = 0; i < deg_; ++i) t *= p_;
            if (t == q) break;
            ++p_;
            if (p_ > q) throw field_error("not a prime power: " + std::to_string(q));
        }
    }

    auto digits = [&](unsigned a) {
        std::vector<unsigned> d(deg_);
        for (unsigned i = 0; i < deg_; ++i) { d[i] = a % p_; a /= p_; }
        return d;
    };
    auto encode = [&](const std::vector<unsigned> &d) {
        unsigned a = 0;
        for (unsigned i = deg_; i-- > 0;) a = a * p_ + d[i];
        return a;
    };

    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        auto da = digits(a);
        for (unsigned b = 0; b < q_; ++b) {
            auto db = digits(b);
            std::vector<unsigned> prod(2 * deg_ - 1, 0);
            for (unsigned i = 0; i < deg_; ++i)
                for (unsigned j = 0; j < deg_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            // reduce modulo f: x^deg = −(c₀ + … + c_{deg−1}x^{deg−1})
            for (unsigned k = static_cast<unsigned>(prod.size()); k-- > deg_;) {
                unsigned c = prod[k];
                if (!c) continue;
                prod[k] = 0;
                for (unsigned i = 0; i < deg_; ++i) {
                    unsigned coeff = modpoly.empty() ? 0 : modpoly[i];
                    prod[k - deg_ + i] = (prod[k - deg_ + i] + c * (p_ - coeff % p_)) % p_;
                }
            }
            prod.resize(deg_);
            mul_[static_cast<std::size_t>(a) * q_ + b] = encode(prod);
        }
    }

    inv_.assign(q_, 0);
    for (unsigned a = 1; a < q_; ++a) {
        for (unsigned b = 1; b < q_; ++b)
            if (mul(a, b) == 1) { inv_[a] = b; break; }
        if (!inv_[a]) throw field_error("irreducible table entry failed inversion; bad polynomial");
    }
}

unsigned Fq::add(unsigned a, unsigned b) const {
    unsigned out = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        out += ((a % p_ + b % p_) % p_) * mult;
        a /= p_; b /= p_; mult *= p_;
    }
    return out;
}

unsigned Fq::neg(unsigned a) const {
    unsigned out = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        out += ((p_ - a % p_) % p_) * mult;
        a /= p_; mult *= p_;
    }
    return out;
}

unsigned Fq::sub(unsigned a, unsigned b) const { return add(a, neg(b)); }

unsigned Fq::inv(unsigned a) const {
    if (a == 0) throw field_error("division by zero");
    return inv_[a];
}

unsigned Fq::pow(unsigned a, std::uint64_t e) const {
    unsigned acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

unsigned Fq::generator_element() const {
    if (deg_ == 1) throw field_error("prime field has no adjoined generator");
    return p_;  // the residue class of x
}

unsigned Fq::element_order(unsigned a) const {
    if (a == 0) throw field_error("zero has no multiplicative order");
    unsigned ord = 1, cur = a;
    while (cur != 1) { cur = mul(cur, a); ++ord; }
    return ord;
}

unsigned Fq::primitive_element() const {
    for (unsigned a = 1; a < q_; ++a)
        if (element_order(a) == q_ - 1) return a;
    throw field_error("no primitive element found");  // unreachable
}

FqMatrix fq_identity(unsigned n, unsigned q) {
    FqMatrix m{n, q, std::vector<unsigned>(static_cast<std::size_t>(n) * n, 0)};
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix fq_mul(const Fq &F, const FqMatrix &A, const FqMatrix &B) {
    if (A.n != B.n || A.q != B.q) throw field_error("matrix shape mismatch");
    FqMatrix C{A.n, A.q, std::vector<unsigned>(static_cast<std::size_t>(A.n) * A.n, 0)};
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned k = 0; k < A.n; ++k) {
            unsigned a = A.at(i, k);
            if (!a) continue;
            for (unsigned j = 0; j < A.n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(a, B.at(k, j)));
        }
    return C;
}

bool fq_is_invertible(const Fq &F, const FqMatrix &A) {
    FqMatrix M = A;
    unsigned n = M.n;
    for (unsigned col = 0, row = 0; col < n && row < n; ++col) {
        unsigned piv = row;
        while (piv < n && M.at(piv, col) == 0) ++piv;
        if (piv == n) return false;
        if (piv != row)
            for (unsigned j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(row, j));
        unsigned s = F.inv(M.at(row, col));
        for (unsigned j = 0; j < n; ++j) M.at(row, j) = F.mul(M.at(row, j), s);
        for (unsigned r = 0; r < n; ++r) {
            if (r == row || M.at(r, col) == 0) continue;
            unsigned f = M.at(r, col);
            for (unsigned j = 0; j < n; ++j)
                M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(row, j)));
        }
        ++row;
        if (col + 1 == n && row == n) return true;
    }
    return true;
}

namespace {

// nonzero vectors in lexicographic coordinate order (first coordinate most
// significant), as coordinate tuples
std::vector<std::vector<unsigned>> enumerate_points(const Fq &F, unsigned n,
                                                    MatrixAction action) {
    std::vector<std::vector<unsigned>> pts;
    std::vector<unsigned> v(n, 0);
    auto advance = [&]() {
        for (unsigned i = n; i-- > 0;) {
            if (++v[i] < F.q()) return true;
            v[i] = 0;
        }
        return false;
    };
    while (advance()) {
        if (action == MatrixAction::projective) {
            // keep only representatives whose first nonzero coordinate is 1
            unsigned lead = 0;
            while (v[lead] == 0) ++lead;
            if (v[lead] != 1) continue;
        }
        pts.push_back(v);
    }
    return pts;
}

}  // namespace

std::vector<Permutation> matrix_group_to_perm(unsigned n, unsigned q,
                                              const std::vector<FqMatrix> &gens,
                                              MatrixAction action) {
    Fq F(q);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        total *= q;
        if (total > (std::uint64_t(caps().point_count) + 1) * q) break;
    }
    std::uint64_t npts = action == MatrixAction::vectors ? total - 1 : (total - 1) / (q - 1);
    if (npts > caps().point_count) throw cap_exceeded("point count exceeds cap");

    auto pts = enumerate_points(F, n, action);
    std::map<std::vector<unsigned>, std::uint32_t> index;
    for (std::uint32_t i = 0; i < pts.size(); ++i) index.emplace(pts[i], i);

    std::vector<Permutation> out;
    for (const auto &M : gens) {
        if (M.n != n || M.q != q) throw field_error("generator shape mismatch");
        if (!fq_is_invertible(F, M)) throw field_error("singular generator");
        std::vector<std::uint16_t> img(pts.size());
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            std::vector<unsigned> w(n, 0);
            for (unsigned r = 0; r < n; ++r)
                for (unsigned c = 0; c < n; ++c)
                    w[r] = F.add(w[r], F.mul(M.at(r, c), pts[i][c]));
            if (action == MatrixAction::projective) {
                unsigned lead = 0;
                while (w[lead] == 0) ++lead;
                unsigned s = F.inv(w[lead]);
                for (unsigned r = 0; r < n; ++r) w[r] = F.mul(s, w[r]);
            }
            img[i] = static_cast<std::uint16_t>(index.at(w));
        }
        out.push_back(Permutation(std::move(img)));
    }
    return out;
}

}  // namespace rackforge
