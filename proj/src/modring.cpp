#include "rackforge/modring.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace rackforge {

namespace {

// ---- GF(2), 64-bit packed ----

class Gf2Rref final : public RrefBase {
public:
    explicit Gf2Rref(std::size_t ncols)
        : ncols_(ncols), words_((ncols + 63) / 64), pivot_of_col_(ncols, -1) {}

    bool add_sparse(const std::vector<std::pair<std::uint32_t, std::int32_t>> &terms) override {
        scratch_.assign(words_, 0);
        bool any = false;
        for (auto [c, v] : terms) {
            if (v & 1) {
                scratch_[c >> 6] ^= 1ULL << (c & 63);
                any = true;
            }
        }
        if (!any) return false;
        // reduce against pivots
        for (std::size_t w = 0; w < words_; ++w) {
            while (std::uint64_t bits = scratch_[w]) {
                auto c = static_cast<std::uint32_t>(w * 64 + __builtin_ctzll(bits));
                int pr = pivot_of_col_[c];
                if (pr < 0) {
                    // clear the tail at later pivot columns, keeping full RREF
                    for (std::size_t r = 0; r < rows_.size(); ++r) {
                        auto pc = pivot_cols_[r];
                        if (pc > c && (scratch_[pc >> 6] >> (pc & 63) & 1))
                            for (std::size_t k = 0; k < words_; ++k) scratch_[k] ^= rows_[r][k];
                    }
                    // then reduce existing rows holding bit c
                    for (std::size_t r = 0; r < rows_.size(); ++r)
                        if (rows_[r][w] >> (c & 63) & 1)
                            for (std::size_t k = 0; k < words_; ++k) rows_[r][k] ^= scratch_[k];
                    pivot_of_col_[c] = static_cast<int>(rows_.size());
                    rows_.push_back(scratch_);
                    pivot_cols_.push_back(c);
                    return true;
                }
                for (std::size_t k = 0; k < words_; ++k) scratch_[k] ^= rows_[pr][k];
            }
        }
        return false;
    }

    std::size_t rank() const override { return rows_.size(); }
    std::size_t cols() const override { return ncols_; }

    std::vector<std::vector<std::uint8_t>> kernel_basis() const override {
        std::vector<std::vector<std::uint8_t>> out;
        for (std::uint32_t f = 0; f < ncols_; ++f) {
            if (pivot_of_col_[f] >= 0) continue;
            std::vector<std::uint8_t> v(ncols_, 0);
            v[f] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r)
                if (rows_[r][f >> 6] >> (f & 63) & 1) v[pivot_cols_[r]] = 1;  // −1 ≡ 1
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    std::size_t ncols_, words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint32_t> pivot_cols_;
    std::vector<int> pivot_of_col_;
    std::vector<std::uint64_t> scratch_;
};

// ---- GF(3), bitsliced: value = lo + 2·hi with (lo,hi) ∈ {00,10,01} ----

struct Gf3Row {
    std::vector<std::uint64_t> lo, hi;
};

// digit encoding: value = lo + 2·hi, the (1,1) pattern never stored.
// sum digits: s1 = a1^b1^(a2&b2); s2 = a2^b2^(a1&b1); then clear (1,1) (≡ 0).
inline void gf3_sub_into(Gf3Row &a, const Gf3Row &b, std::size_t words) {
    // subtraction = addition of the negation (negation swaps planes)
    for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t al = a.lo[k], ah = a.hi[k], bl = b.hi[k], bh = b.lo[k];
        std::uint64_t s1 = al ^ bl ^ (ah & bh);
        std::uint64_t s2 = ah ^ bh ^ (al & bl);
        std::uint64_t mask = s1 & s2;
        a.lo[k] = s1 ^ mask;
        a.hi[k] = s2 ^ mask;
    }
}

class Gf3Rref final : public RrefBase {
public:
    explicit Gf3Rref(std::size_t ncols)
        : ncols_(ncols), words_((ncols + 63) / 64), pivot_of_col_(ncols, -1) {}

    bool add_sparse(const std::vector<std::pair<std::uint32_t, std::int32_t>> &terms) override {
        scratch_.lo.assign(words_, 0);
        scratch_.hi.assign(words_, 0);
        bool any = false;
        for (auto [c, v] : terms) {
            unsigned d = ((v % 3) + 3) % 3;
            unsigned cur = get(scratch_, c);
            set(scratch_, c, (cur + d) % 3);
        }
        for (std::size_t k = 0; k < words_; ++k) any |= (scratch_.lo[k] | scratch_.hi[k]) != 0;
        if (!any) return false;
        for (std::size_t w = 0; w < words_; ++w) {
            while (std::uint64_t bits = scratch_.lo[w] | scratch_.hi[w]) {
                auto c = static_cast<std::uint32_t>(w * 64 + __builtin_ctzll(bits));
                unsigned val = get(scratch_, c);  // 1 or 2
                int pr = pivot_of_col_[c];
                if (pr < 0) {
                    if (val == 2) negate(scratch_);  // normalize pivot to 1
                    // clear the tail at later pivot columns, keeping full RREF
                    for (std::size_t r = 0; r < rows_.size(); ++r) {
                        auto pc = pivot_cols_[r];
                        if (pc <= c) continue;
                        unsigned tv = get(scratch_, pc);
                        if (tv == 1) gf3_sub_into(scratch_, rows_[r], words_);
                        else if (tv == 2) { gf3_sub_into(scratch_, rows_[r], words_); gf3_sub_into(scratch_, rows_[r], words_); }
                    }
                    for (std::size_t r = 0; r < rows_.size(); ++r) {
                        unsigned rv = get_row(r, c);
                        if (rv == 1) gf3_sub_into(rows_[r], scratch_, words_);
                        else if (rv == 2) { gf3_sub_into(rows_[r], scratch_, words_); gf3_sub_into(rows_[r], scratch_, words_); }
                    }
                    pivot_of_col_[c] = static_cast<int>(rows_.size());
                    rows_.push_back(scratch_);
                    pivot_cols_.push_back(c);
                    return true;
                }
                if (val == 1) gf3_sub_into(scratch_, rows_[pr], words_);
                else { gf3_sub_into(scratch_, rows_[pr], words_); gf3_sub_into(scratch_, rows_[pr], words_); }
            }
        }
        return false;
    }

    std::size_t rank() const override { return rows_.size(); }
    std::size_t cols() const override { return ncols_; }

    std::vector<std::vector<std::uint8_t>> kernel_basis() const override {
        std::vector<std::vector<std::uint8_t>> out;
        for (std::uint32_t f = 0; f < ncols_; ++f) {
            if (pivot_of_col_[f] >= 0) continue;
            std::vector<std::uint8_t> v(ncols_, 0);
            v[f] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                unsigned coef = get_row(r, f);
                if (coef) v[pivot_cols_[r]] = static_cast<std::uint8_t>(3 - coef);  // −coef
            }
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    static unsigned get(const Gf3Row &row, std::uint32_t c) {
        return static_cast<unsigned>((row.lo[c >> 6] >> (c & 63) & 1) +
                                     2 * (row.hi[c >> 6] >> (c & 63) & 1));
    }
    unsigned get_row(std::size_t r, std::uint32_t c) const { return get(rows_[r], c); }
    void set(Gf3Row &row, std::uint32_t c, unsigned v) {
        std::uint64_t bit = 1ULL << (c & 63);
        row.lo[c >> 6] &= ~bit;
        row.hi[c >> 6] &= ~bit;
        if (v == 1) row.lo[c >> 6] |= bit;
        else if (v == 2) row.hi[c >> 6] |= bit;
    }
    void negate(Gf3Row &row) { row.lo.swap(row.hi); }

    std::size_t ncols_, words_;
    std::vector<Gf3Row> rows_;
    std::vector<std::uint32_t> pivot_cols_;
    std::vector<int> pivot_of_col_;
    Gf3Row scratch_;
};

// ---- generic small prime, byte rows ----

class GfpRref final : public RrefBase {
public:
    GfpRref(unsigned p, std::size_t ncols) : p_(p), ncols_(ncols), pivot_of_col_(ncols, -1) {
        inv_.assign(p_, 0);
        for (unsigned a = 1; a < p_; ++a)
            for (unsigned b = 1; b < p_; ++b)
                if (a * b % p_ == 1) { inv_[a] = b; break; }
    }

    bool add_sparse(const std::vector<std::pair<std::uint32_t, std::int32_t>> &terms) override {
        scratch_.assign(ncols_, 0);
        for (auto [c, v] : terms) {
            long long d = ((v % (long long)p_) + p_) % p_;
            scratch_[c] = static_cast<std::uint8_t>((scratch_[c] + d) % p_);
        }
        for (std::uint32_t c = 0; c < ncols_; ++c) {
            if (!scratch_[c]) continue;
            int pr = pivot_of_col_[c];
            if (pr < 0) {
                unsigned s = inv_[scratch_[c]];
                for (auto &x : scratch_) x = static_cast<std::uint8_t>(x * s % p_);
                // clear the tail at later pivot columns, keeping full RREF
                for (std::size_t r = 0; r < rows_.size(); ++r) {
                    auto pc = pivot_cols_[r];
                    if (pc > c && scratch_[pc]) axpy(scratch_, rows_[r], p_ - scratch_[pc]);
                }
                for (std::size_t r = 0; r < rows_.size(); ++r) {
                    unsigned coef = rows_[r][c];
                    if (coef) axpy(rows_[r], scratch_, p_ - coef);
                }
                pivot_of_col_[c] = static_cast<int>(rows_.size());
                rows_.push_back(scratch_);
                pivot_cols_.push_back(c);
                return true;
            }
            axpy(scratch_, rows_[pr], p_ - scratch_[c]);
        }
        return false;
    }

    std::size_t rank() const override { return rows_.size(); }
    std::size_t cols() const override { return ncols_; }

    std::vector<std::vector<std::uint8_t>> kernel_basis() const override {
        std::vector<std::vector<std::uint8_t>> out;
        for (std::uint32_t f = 0; f < ncols_; ++f) {
            if (pivot_of_col_[f] >= 0) continue;
            std::vector<std::uint8_t> v(ncols_, 0);
            v[f] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r)
                if (rows_[r][f]) v[pivot_cols_[r]] = static_cast<std::uint8_t>(p_ - rows_[r][f]);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    void axpy(std::vector<std::uint8_t> &dst, const std::vector<std::uint8_t> &src, unsigned coef) {
        // dst += coef·src
        for (std::size_t i = 0; i < ncols_; ++i)
            dst[i] = static_cast<std::uint8_t>((dst[i] + coef * src[i]) % p_);
    }
    unsigned p_;
    std::size_t ncols_;
    std::vector<std::vector<std::uint8_t>> rows_;
    std::vector<std::uint32_t> pivot_cols_;
    std::vector<int> pivot_of_col_;
    std::vector<std::uint8_t> scratch_;
    std::vector<unsigned> inv_;
};

}  // namespace

std::unique_ptr<RrefBase> make_rref(unsigned p, std::size_t ncols) {
    if (p == 2) return std::make_unique<Gf2Rref>(ncols);
    if (p == 3) return std::make_unique<Gf3Rref>(ncols);
    if (p < 2 || p > 251) throw std::invalid_argument("unsupported prime for RREF");
    return std::make_unique<GfpRref>(p, ncols);
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, long long M)
    : rows_(rows), cols_(cols), M_(M), a_(rows * cols, 0) {
    if (M < 2) throw std::invalid_argument("modulus must be >= 2");
}

namespace {

long long mod_norm(long long v, long long M) { return ((v % M) + M) % M; }

// extended gcd: returns g, sets u,v with u·a + v·b = g
long long egcd(long long a, long long b, long long &u, long long &v) {
    if (b == 0) { u = 1; v = 0; return a; }
    long long u1, v1;
    long long g = egcd(b, a % b, u1, v1);
    u = v1;
    v = u1 - (a / b) * v1;
    return g;
}

struct ModElim {
    std::size_t rows, cols;
    long long M;
    std::vector<long long> a;                 // row-major working copy
    std::vector<long long> rhs;               // optional augmented column
    std::vector<int> pivot_row_of_col;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)

    long long &at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

    // bring to echelon form with gcd row transforms (valid over ℤ/M)
    void eliminate(bool with_rhs) {
        pivot_row_of_col.assign(cols, -1);
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols && row < rows; ++col) {
            // gcd-combine all entries of this column below `row` into one
            std::size_t nz = SIZE_MAX;
            for (std::size_t r = row; r < rows; ++r)
                if (at(r, col) % M != 0) { nz = r; break; }
            if (nz == SIZE_MAX) continue;
            if (nz != row) swap_rows(nz, row, with_rhs);
            for (std::size_t r = row + 1; r < rows; ++r) {
                long long x = mod_norm(at(row, col), M), y = mod_norm(at(r, col), M);
                if (y == 0) continue;
                long long u, v;
                long long g = egcd(x, y, u, v);
                // rows (row, r) ← (u·row + v·r, −y/g·row + x/g·r); unimodular
                long long s = -(y / g), t = x / g;
                combine_rows(row, r, u, v, s, t, with_rhs);
            }
            pivot_row_of_col[col] = static_cast<int>(row);
            pivots.emplace_back(row, col);
            ++row;
        }
    }

    void swap_rows(std::size_t r1, std::size_t r2, bool with_rhs) {
        for (std::size_t c = 0; c < cols; ++c) std::swap(at(r1, c), at(r2, c));
        if (with_rhs) std::swap(rhs[r1], rhs[r2]);
    }

    void combine_rows(std::size_t r1, std::size_t r2, long long u, long long v, long long s,
                      long long t, bool with_rhs) {
        for (std::size_t c = 0; c < cols; ++c) {
            long long x = at(r1, c), y = at(r2, c);
            at(r1, c) = mod_norm(u % M * (x % M) % M + v % M * (y % M) % M, M);
            at(r2, c) = mod_norm(s % M * (x % M) % M + t % M * (y % M) % M, M);
        }
        if (with_rhs) {
            long long x = rhs[r1], y = rhs[r2];
            rhs[r1] = mod_norm(u % M * (x % M) % M + v % M * (y % M) % M, M);
            rhs[r2] = mod_norm(s % M * (x % M) % M + t % M * (y % M) % M, M);
        }
    }
};

}  // namespace

std::optional<std::vector<long long>> solve_mod(const ModMatrix &A, const std::vector<long long> &b) {
    if (b.size() != A.rows()) throw std::invalid_argument("rhs size mismatch");
    const long long M = A.modulus();
    ModElim e{A.rows(), A.cols(), M, {}, {}, {}, {}};
    e.a.resize(A.rows() * A.cols());
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) e.at(r, c) = mod_norm(A.at(r, c), M);
    e.rhs.resize(b.size());
    for (std::size_t r = 0; r < b.size(); ++r) e.rhs[r] = mod_norm(b[r], M);
    e.eliminate(true);
    // rows below the last pivot must have zero rhs
    std::size_t used = e.pivots.size();
    for (std::size_t r = used; r < e.rows; ++r)
        if (e.rhs[r] != 0) return std::nullopt;
    // back-substitute (pivot g divides required value or no solution)
    std::vector<long long> x(A.cols(), 0);
    for (std::size_t i = e.pivots.size(); i-- > 0;) {
        auto [r, c] = e.pivots[i];
        long long acc = e.rhs[r];
        for (std::size_t cc = c + 1; cc < e.cols; ++cc)
            acc = mod_norm(acc - e.at(r, cc) % M * (x[cc] % M), M);
        long long g = mod_norm(e.at(r, c), M);
        // solve g·x ≡ acc (mod M)
        long long u, v;
        long long d = egcd(g, M, u, v);
        if (acc % d != 0) return std::nullopt;
        long long sol = mod_norm(u % (M / d) * ((acc / d) % (M / d)), M / d);
        x[c] = sol;  // smallest representative; any lift works
    }
    return x;
}

unsigned long mod_image_log(const ModMatrix &A, unsigned p, unsigned k) {
    const long long M = A.modulus();
    {
        long long check = 1;
        for (unsigned i = 0; i < k; ++i) check *= p;
        if (check != M) throw std::invalid_argument("modulus is not the stated prime power");
    }
    auto val_p = [&](long long v) {
        v = mod_norm(v, M);
        if (v == 0) return k;
        unsigned e = 0;
        while (v % p == 0) { v /= p; ++e; }
        return e;
    };
    // generators = columns of A inside (ℤ/M)^rows; iterate elimination with
    // Howell completions (p^{k−e}·row for each pivot of valuation e) until the
    // pivot signature stabilizes; then |span| = ∏ p^{k − e_pivot}.
    std::size_t width = A.rows();
    std::vector<long long> work(A.cols() * width);
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) work[c * width + r] = mod_norm(A.at(r, c), M);
    std::vector<std::pair<std::size_t, unsigned>> prev_sig;
    for (int round = 0; round < 1000; ++round) {
        ModElim cur{work.size() / width, width, M, work, {}, {}, {}};
        cur.eliminate(false);
        std::vector<std::pair<std::size_t, unsigned>> sig;
        std::vector<long long> extra;
        for (auto [r, c] : cur.pivots) {
            unsigned e = val_p(cur.at(r, c));
            sig.emplace_back(c, e);
            if (e > 0 && e < k) {
                long long mult = 1;
                for (unsigned i = 0; i < k - e; ++i) mult = mult * p % M;
                std::vector<long long> row(width, 0);
                bool nonzero = false;
                for (std::size_t cc = 0; cc < width; ++cc) {
                    row[cc] = mod_norm(cur.at(r, cc) % M * mult, M);
                    nonzero |= row[cc] != 0;
                }
                if (nonzero) extra.insert(extra.end(), row.begin(), row.end());
            }
        }
        if (sig == prev_sig || extra.empty()) {
            unsigned long log = 0;
            for (auto [c, e] : sig) log += k - e;
            return log;
        }
        prev_sig = std::move(sig);
        std::vector<long long> next;
        next.reserve(cur.a.size() + extra.size());
        // keep only the echelon rows (the rest reduced to zero)
        next.insert(next.end(), cur.a.begin(), cur.a.begin() + cur.pivots.size() * width);
        next.insert(next.end(), extra.begin(), extra.end());
        work = std::move(next);
    }
    throw std::runtime_error("mod_image_log did not stabilize");
}

}  // namespace rackforge
