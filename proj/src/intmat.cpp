#include "rackforge/intmat.hpp"

#include <algorithm>
#include <set>

namespace rackforge {

void IntMatrix::add(std::size_t r, std::size_t c, long v) {
    if (!v) return;
    auto &row = row_data_[r];
    auto it = row.find(c);
    if (it == row.end()) {
        row.emplace(c, v);
    } else {
        it->second += v;
        if (it->second == 0) row.erase(it);
    }
}

void IntMatrix::set(std::size_t r, std::size_t c, mpz_class v) {
    auto &row = row_data_[r];
    if (v == 0)
        row.erase(c);
    else
        row[c] = std::move(v);
}

mpz_class IntMatrix::get(std::size_t r, std::size_t c) const {
    auto it = row_data_[r].find(c);
    return it == row_data_[r].end() ? mpz_class(0) : it->second;
}

std::size_t IntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto &r : row_data_) n += r.size();
    return n;
}

// Elimination state shared by smith_normal_form and int_rank.
struct SnfWorker {
    std::vector<std::map<std::size_t, mpz_class>> rows;
    std::vector<std::set<std::size_t>> col_rows;   // column -> rows with entry
    std::set<std::pair<std::size_t, std::size_t>> col_queue;  // (count, col)
    std::vector<mpz_class> diagonal;

    explicit SnfWorker(const IntMatrix &M) : rows(M.row_data_), col_rows(M.cols()) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto &[c, v] : rows[r]) col_rows[c].insert(r);
        for (std::size_t c = 0; c < col_rows.size(); ++c)
            if (!col_rows[c].empty()) col_queue.emplace(col_rows[c].size(), c);
    }

    void touch_col(std::size_t c, std::size_t old_count) {
        if (old_count) col_queue.erase({old_count, c});
        if (!col_rows[c].empty()) col_queue.emplace(col_rows[c].size(), c);
    }

    // row_r -= q * row_p, maintaining col_rows
    void row_axpy(std::size_t r, std::size_t p, const mpz_class &q) {
        if (q == 0) return;
        for (const auto &[c, v] : rows[p]) {
            auto it = rows[r].find(c);
            if (it == rows[r].end()) {
                mpz_class nv = -q * v;
                if (nv != 0) {
                    rows[r].emplace(c, std::move(nv));
                    auto old = col_rows[c].size();
                    col_rows[c].insert(r);
                    touch_col(c, old);
                }
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    rows[r].erase(it);
                    auto old = col_rows[c].size();
                    col_rows[c].erase(r);
                    touch_col(c, old);
                }
            }
        }
    }

    void remove_row(std::size_t r) {
        for (const auto &[c, v] : rows[r]) {
            auto old = col_rows[c].size();
            col_rows[c].erase(r);
            touch_col(c, old);
        }
        rows[r].clear();
    }

    void run() {
        while (!col_queue.empty()) {
            std::size_t c = col_queue.begin()->second;
            // pivot in column c: smallest |value|, then shortest row, then index
            std::size_t pr = SIZE_MAX;
            mpz_class best_abs;
            for (auto r : col_rows[c]) {
                mpz_class a = abs(rows[r].at(c));
                if (pr == SIZE_MAX || a < best_abs ||
                    (a == best_abs && rows[r].size() < rows[pr].size())) {
                    pr = r;
                    best_abs = a;
                }
            }
            // Euclid within the column until the pivot divides every entry
            for (;;) {
                bool again = false;
                std::vector<std::size_t> others(col_rows[c].begin(), col_rows[c].end());
                for (auto r : others) {
                    if (r == pr) continue;
                    mpz_class a = rows[pr].at(c), b = rows[r].at(c);
                    mpz_class q = b / a;  // truncated division
                    if (q != 0) row_axpy(r, pr, q);
                    auto it = rows[r].find(c);
                    if (it != rows[r].end() && it->second != 0) {
                        // remainder smaller than |a|: swap pivot role
                        pr = r;
                        again = true;
                        break;
                    }
                }
                if (!again) break;
            }
            // column is now singleton at (pr, c); reduce the pivot row by
            // column ops (they only touch row pr, whose column is cleared)
            mpz_class a = rows[pr].at(c);
            for (;;) {
                std::size_t best_c = SIZE_MAX;
                mpz_class best;
                for (const auto &[cc, vv] : rows[pr]) {
                    if (cc == c) continue;
                    mpz_class rem = vv % a;
                    if (rem != 0) {
                        // column op leaves remainder; it becomes a smaller pivot
                        if (best_c == SIZE_MAX || abs(rem) < best) {
                            best_c = cc;
                            best = abs(rem);
                        }
                    }
                }
                if (best_c == SIZE_MAX) break;
                // move pivot to (pr, best_c): conceptually col_{best_c} -= q·col_c,
                // then restart with the smaller value there
                mpz_class rem = rows[pr].at(best_c) % a;
                rows[pr][best_c] = rem;
                // pivot moves to (pr, best_c); that column may have entries in
                // other rows, so clear it the same way before continuing
                c = best_c;
                // re-run column Euclid for the new column
                std::size_t pr2 = pr;
                for (;;) {
                    bool again = false;
                    std::vector<std::size_t> others(col_rows[c].begin(), col_rows[c].end());
                    for (auto r : others) {
                        if (r == pr2) continue;
                        mpz_class av = rows[pr2].at(c), bv = rows[r].at(c);
                        mpz_class q = bv / av;
                        if (q != 0) row_axpy(r, pr2, q);
                        auto it = rows[r].find(c);
                        if (it != rows[r].end() && it->second != 0) {
                            pr2 = r;
                            again = true;
                            break;
                        }
                    }
                    if (!again) break;
                }
                pr = pr2;
                a = rows[pr].at(c);
            }
            // every entry of row pr is divisible by a: clearing them is a
            // column op touching only row pr (its column is singleton), so
            // removing the whole row realizes exactly those ops
            diagonal.push_back(abs(a));
            remove_row(pr);
        }
    }
};

SmithResult smith_normal_form(const IntMatrix &M) {
    SnfWorker w(M);
    w.run();
    // normalize the diagonal multiset into a divisibility chain
    std::vector<mpz_class> d = w.diagonal;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0) continue;
                mpz_class g = gcd(d[i], d[j]);
                mpz_class l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
        std::sort(d.begin(), d.end());
    }
    return SmithResult{std::move(d)};
}

std::size_t int_rank(const IntMatrix &M) {
    SnfWorker w(M);
    w.run();
    return w.diagonal.size();
}

}  // namespace rackforge
