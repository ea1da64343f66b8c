#include "troprank/lp.hpp"

#include <stdexcept>

namespace troprank::lp {

namespace {

// Dense simplex tableau over the rationals. Columns: x+ (n), x- (n), slacks,
// artificials, rhs. Row `obj1` carries the phase-1 objective, `obj2` the
// caller's objective; both are updated by every pivot so phase 2 can resume
// in place.
struct Tableau {
    std::size_t n = 0;           // original variable count
    std::size_t slacks = 0;
    std::size_t arts = 0;
    std::vector<QVec> rows;      // constraint rows, rhs last
    QVec obj1, obj2;
    std::vector<std::size_t> basis;

    std::size_t width() const { return 2 * n + slacks + arts + 1; }
    std::size_t rhs_col() const { return width() - 1; }
    bool artificial(std::size_t col) const { return col >= 2 * n + slacks && col < rhs_col(); }

    void pivot(std::size_t pr, std::size_t pc) {
        const Rat inv = Rat(1) / rows[pr][pc];
        for (Rat& v : rows[pr]) v *= inv;
        auto clear = [&](QVec& row) {
            const Rat f = row[pc];
            if (f == 0) return;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows[pr][j];
        };
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != pr) clear(rows[r]);
        clear(obj1);
        clear(obj2);
        basis[pr] = pc;
    }

    // Bland's rule; returns false at optimum, throws on unbounded.
    bool step(const QVec& obj, bool allow_artificial) {
        std::size_t enter = width();
        for (std::size_t c = 0; c + 1 < width(); ++c) {
            if (!allow_artificial && artificial(c)) continue;
            if (obj[c] > 0) {
                enter = c;
                break;
            }
        }
        if (enter == width()) return false;

        std::size_t leave = rows.size();
        Rat best;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r][enter] <= 0) continue;
            const Rat ratio = rows[r][rhs_col()] / rows[r][enter];
            if (leave == rows.size() || ratio < best ||
                (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == rows.size()) throw Status::Unbounded;
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

Result solve(const Problem& p) {
    Tableau t;
    t.n = p.num_vars;
    t.slacks = p.leq.size();
    t.arts = p.leq.size() + p.eq.size();
    const std::size_t m = t.arts;
    const std::size_t w = t.width();

    t.rows.assign(m, QVec(w, Rat(0)));
    t.obj1.assign(w, Rat(0));
    t.obj2.assign(w, Rat(0));
    t.basis.resize(m);

    auto fill_row = [&](std::size_t r, const QVec& a, const Rat& b, bool has_slack,
                        std::size_t slack_idx) {
        const bool flip = b < 0;
        const Rat sign = flip ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < t.n; ++j) {
            t.rows[r][j] = sign * a[j];
            t.rows[r][t.n + j] = -sign * a[j];
        }
        if (has_slack) t.rows[r][2 * t.n + slack_idx] = sign;
        t.rows[r][2 * t.n + t.slacks + r] = 1;  // artificial, initial basis
        t.rows[r][t.rhs_col()] = sign * b;
        t.basis[r] = 2 * t.n + t.slacks + r;
    };

    for (std::size_t i = 0; i < p.leq.size(); ++i)
        fill_row(i, p.leq[i].first, p.leq[i].second, true, i);
    for (std::size_t i = 0; i < p.eq.size(); ++i)
        fill_row(p.leq.size() + i, p.eq[i].first, p.eq[i].second, false, 0);

    // Phase-1 objective (maximize -sum of artificials), expressed through the
    // initial basis: the reduced row is the sum of all constraint rows over
    // the non-artificial columns.
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < w; ++j)
            if (!t.artificial(j)) t.obj1[j] += t.rows[r][j];

    for (std::size_t j = 0; j < t.n; ++j) {
        t.obj2[j] = p.objective[j];
        t.obj2[t.n + j] = -p.objective[j];
    }

    try {
        while (t.step(t.obj1, false)) {
        }
    } catch (Status) {
        throw std::logic_error("phase-1 objective is bounded by construction");
    }
    if (t.obj1[t.rhs_col()] != 0) return {Status::Infeasible, Rat(0), {}};

    // Drive artificials out of the basis; rows that cannot pivot are redundant.
    for (std::size_t r = 0; r < t.rows.size();) {
        if (!t.artificial(t.basis[r])) {
            ++r;
            continue;
        }
        std::size_t pc = w;
        for (std::size_t c = 0; c < 2 * t.n + t.slacks; ++c)
            if (t.rows[r][c] != 0) {
                pc = c;
                break;
            }
        if (pc != w) {
            t.pivot(r, pc);
            ++r;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<long>(r));
            t.basis.erase(t.basis.begin() + static_cast<long>(r));
        }
    }

    try {
        while (t.step(t.obj2, false)) {
        }
    } catch (Status s) {
        return {s, Rat(0), {}};
    }

    QVec x(t.n, Rat(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::size_t b = t.basis[r];
        if (b < t.n) x[b] += t.rows[r][t.rhs_col()];
        else if (b < 2 * t.n) x[b - t.n] -= t.rows[r][t.rhs_col()];
    }
    Rat value(0);
    for (std::size_t j = 0; j < t.n; ++j) value += p.objective[j] * x[j];
    return {Status::Optimal, value, x};
}

}  // namespace troprank::lp
