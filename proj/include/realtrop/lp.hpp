#pragma once

// Dense two-phase simplex over exact rationals with Bland's anti-cycling rule.
// Sized for secondary-cone questions: a few dozen variables and constraints.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace realtrop {

using Rational = mpq_class;

namespace lp {

enum class Status { optimal, infeasible, unbounded };

struct Result
{
    Status status = Status::infeasible;
    std::vector<Rational> x;  // primal solution when optimal
    Rational value;           // objective value when optimal
};

namespace detail {

class Tableau
{
public:
    // rows_[r] has nvars + 1 entries, the last one being the right-hand side.
    // obj_ holds reduced costs, obj_[nvars] = -(objective value).
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> obj_;
    std::vector<int> basis_;
    int nvars_ = 0;

    void pivot(int r, int col)
    {
        std::vector<Rational>& pr = rows_[r];
        const Rational inv = 1 / pr[col];
        for (Rational& v : pr)
            if (sgn(v) != 0)
                v *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (static_cast<int>(i) == r)
                continue;
            eliminate(rows_[i], pr, col);
        }
        eliminate(obj_, pr, col);
        basis_[r] = col;
    }

    // Bland's rule: smallest improving column, ties in the ratio test broken
    // by the smallest basic variable.
    Status optimize()
    {
        for (;;) {
            int col = -1;
            for (int j = 0; j < nvars_; ++j)
                if (sgn(obj_[j]) > 0) {
                    col = j;
                    break;
                }
            if (col < 0)
                return Status::optimal;
            int row = -1;
            Rational best;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                const Rational& a = rows_[r][col];
                if (sgn(a) <= 0)
                    continue;
                Rational ratio = rows_[r][nvars_] / a;
                if (row < 0 || ratio < best || (ratio == best && basis_[r] < basis_[row])) {
                    row = static_cast<int>(r);
                    best = std::move(ratio);
                }
            }
            if (row < 0)
                return Status::unbounded;
            pivot(row, col);
        }
    }

private:
    static void eliminate(std::vector<Rational>& target, const std::vector<Rational>& pr, int col)
    {
        if (sgn(target[col]) == 0)
            return;
        const Rational f = target[col];
        for (std::size_t j = 0; j < target.size(); ++j)
            if (sgn(pr[j]) != 0)
                target[j] -= f * pr[j];
    }
};

}  // namespace detail

/// maximize c.x  subject to  A x <= b,  x >= 0.
inline Result maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                       const std::vector<Rational>& c)
{
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("lp::maximize: row count mismatch");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("lp::maximize: column count mismatch");

    // Columns: originals [0, n), slacks [n, n+m), artificial n+m.
    const int art = n + m;
    detail::Tableau tab;
    tab.nvars_ = n + m + 1;
    tab.rows_.assign(m, std::vector<Rational>(tab.nvars_ + 1));
    tab.basis_.resize(m);
    int mostNegative = -1;
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j)
            tab.rows_[r][j] = A[r][j];
        tab.rows_[r][n + r] = 1;
        tab.rows_[r][art] = -1;
        tab.rows_[r][tab.nvars_] = b[r];
        tab.basis_[r] = n + r;
        if (sgn(b[r]) < 0 && (mostNegative < 0 || b[r] < b[mostNegative]))
            mostNegative = r;
    }

    if (mostNegative >= 0) {
        // Phase 1: maximize -artificial.
        tab.obj_.assign(tab.nvars_ + 1, 0);
        tab.obj_[art] = -1;
        tab.pivot(mostNegative, art);
        tab.optimize();
        if (sgn(tab.obj_[tab.nvars_]) != 0)  // optimum of -art is < 0
            return {Status::infeasible, {}, 0};
        for (int r = 0; r < static_cast<int>(tab.rows_.size()); ++r) {
            if (tab.basis_[r] != art)
                continue;
            int col = -1;
            for (int j = 0; j < art; ++j)
                if (sgn(tab.rows_[r][j]) != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                tab.pivot(r, col);
            } else {
                tab.rows_.erase(tab.rows_.begin() + r);
                tab.basis_.erase(tab.basis_.begin() + r);
                --r;
            }
        }
    }
    // Drop the artificial column (it is nonbasic at zero now).
    for (auto& row : tab.rows_)
        row.erase(row.begin() + art);
    tab.nvars_ = n + m;

    // Phase 2 objective in terms of the current basis.
    tab.obj_.assign(tab.nvars_ + 1, 0);
    for (int j = 0; j < n; ++j)
        tab.obj_[j] = c[j];
    for (std::size_t r = 0; r < tab.rows_.size(); ++r) {
        const int bv = tab.basis_[r];
        if (bv < n && sgn(c[bv]) != 0) {
            const Rational cb = c[bv];
            for (int j = 0; j <= tab.nvars_; ++j)
                tab.obj_[j] -= cb * tab.rows_[r][j];
        }
    }
    const Status st = tab.optimize();
    if (st == Status::unbounded)
        return {Status::unbounded, {}, 0};

    Result res;
    res.status = Status::optimal;
    res.x.assign(n, 0);
    for (std::size_t r = 0; r < tab.rows_.size(); ++r)
        if (tab.basis_[r] < n)
            res.x[tab.basis_[r]] = tab.rows_[r][tab.nvars_];
    res.value = -tab.obj_[tab.nvars_];
    return res;
}

}  // namespace lp
}  // namespace realtrop
