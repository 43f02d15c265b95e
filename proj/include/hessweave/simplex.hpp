#pragma once

#include "rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hessweave {

// Dense exact-rational two-phase simplex with Bland's rule. Problems here are
// small (lifting feasibility, canonical supports); exactness matters, speed not.
struct LinearProgram {
    enum class Rel { LE, EQ, GE };
    struct Row {
        std::vector<Rational> a;
        Rel rel = Rel::LE;
        Rational rhs;
    };
    std::size_t num_vars = 0;           // structural variables, all constrained >= 0
    std::vector<Row> rows;
    std::vector<Rational> objective;    // minimize c.x (empty = feasibility only)

    void add_row(std::vector<Rational> a, Rel rel, Rational rhs) {
        rows.push_back({std::move(a), rel, std::move(rhs)});
    }
};

struct LPResult {
    enum class Status { OPTIMAL, INFEASIBLE, UNBOUNDED };
    Status status = Status::INFEASIBLE;
    std::vector<Rational> x;            // structural values at optimum
    Rational value;                     // objective at optimum
    std::vector<std::size_t> infeasible_rows;  // rows whose artificials stay positive
};

namespace detail {

class SimplexTableau {
  public:
    // cols: structurals, then slacks/surplus, then artificials, then rhs.
    std::vector<std::vector<Rational>> t;
    std::vector<std::size_t> basis;      // per row: basic column
    std::size_t n_struct, n_total;       // without rhs column
    std::vector<std::size_t> art_row;    // artificial col -> row
    std::size_t art_begin;

    explicit SimplexTableau(const LinearProgram& lp) {
        const std::size_t m = lp.rows.size();
        n_struct = lp.num_vars;
        std::size_t n_slack = 0;
        for (const auto& r : lp.rows)
            if (r.rel != LinearProgram::Rel::EQ) ++n_slack;
        art_begin = n_struct + n_slack;
        n_total = art_begin + m;  // one artificial per row (unused ones stay nonbasic)
        t.assign(m, std::vector<Rational>(n_total + 1, Rational(0)));
        basis.assign(m, 0);
        std::size_t slack = n_struct;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = lp.rows[i];
            if (r.a.size() != n_struct) throw std::invalid_argument("bad row width");
            int flip = sign_of(r.rhs) < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_struct; ++j) t[i][j] = r.a[j] * flip;
            t[i][n_total] = r.rhs * flip;
            auto rel = r.rel;
            if (flip < 0) {
                if (rel == LinearProgram::Rel::LE)
                    rel = LinearProgram::Rel::GE;
                else if (rel == LinearProgram::Rel::GE)
                    rel = LinearProgram::Rel::LE;
            }
            if (rel == LinearProgram::Rel::LE) {
                t[i][slack] = 1;
                basis[i] = slack++;
            } else {
                if (rel == LinearProgram::Rel::GE) t[i][slack++] = -1;
                t[i][art_begin + i] = 1;
                basis[i] = art_begin + i;
            }
        }
        // LE rows with slack basic need no artificial; mark rows with artificial basic.
    }

    // Minimize cost over current feasible basis; cost has n_total entries.
    // Returns false if unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& frozen) {
        const std::size_t m = t.size();
        // reduced costs z_j = c_j - c_B . B^-1 A_j maintained directly
        std::vector<Rational> red(n_total + 1, Rational(0));
        for (std::size_t j = 0; j <= n_total; ++j) red[j] = j < n_total ? cost[j] : Rational(0);
        for (std::size_t i = 0; i < m; ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= n_total; ++j)
                if (t[i][j] != 0) red[j] -= cb * t[i][j];
        }
        for (;;) {
            std::size_t enter = n_total;
            for (std::size_t j = 0; j < n_total; ++j) {  // Bland: lowest index
                if (frozen[j]) continue;
                if (sign_of(red[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_total) return true;  // optimal
            std::size_t leave = m;
            // A frozen basic artificial sits at value 0; kick it out on first
            // contact so it can never drift positive through a negative pivot.
            // (Each such pivot retires one artificial for good: no cycling.)
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] >= art_begin && frozen[basis[i]] && t[i][enter] != 0 &&
                    t[i][n_total] == 0) {
                    leave = i;
                    break;
                }
            if (leave == m) {
                Rational best;
                for (std::size_t i = 0; i < m; ++i) {
                    if (sign_of(t[i][enter]) <= 0) continue;
                    Rational ratio = t[i][n_total] / t[i][enter];
                    if (leave == m || ratio < best ||
                        (ratio == best && basis[i] < basis[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == m) return false;  // unbounded
            pivot(leave, enter, red);
        }
    }

    void pivot(std::size_t row, std::size_t col, std::vector<Rational>& red) {
        const std::size_t m = t.size();
        Rational piv = t[row][col];
        for (auto& v : t[row]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rational f = t[i][col];
            for (std::size_t j = 0; j <= n_total; ++j)
                if (t[row][j] != 0) t[i][j] -= f * t[row][j];
        }
        if (red[col] != 0) {
            Rational f = red[col];
            for (std::size_t j = 0; j <= n_total; ++j)
                if (t[row][j] != 0) red[j] -= f * t[row][j];
        }
        basis[row] = col;
    }
};

}  // namespace detail

inline LPResult solve_lp(const LinearProgram& lp) {
    detail::SimplexTableau tab(lp);
    const std::size_t m = tab.t.size(), n_total = tab.n_total;
    LPResult res;

    // Phase 1: minimize sum of artificials (only those that started basic).
    std::vector<Rational> cost1(n_total, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= tab.art_begin) cost1[tab.basis[i]] = 1;
    std::vector<bool> frozen(n_total, false);
    if (!tab.optimize(cost1, frozen)) throw std::logic_error("phase 1 unbounded");
    Rational p1(0);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= tab.art_begin) p1 += tab.t[i][n_total];
    if (p1 != 0) {
        res.status = LPResult::Status::INFEASIBLE;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis[i] >= tab.art_begin && tab.t[i][n_total] != 0)
                res.infeasible_rows.push_back(tab.basis[i] - tab.art_begin);
        return res;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < tab.art_begin) continue;
        std::vector<Rational> dummy(n_total + 1, Rational(0));
        bool pivoted = false;
        for (std::size_t j = 0; j < tab.art_begin && !pivoted; ++j)
            if (tab.t[i][j] != 0) {
                tab.pivot(i, j, dummy);
                pivoted = true;
            }
        // If no pivot exists the row is redundant; the artificial stays basic at 0.
    }
    for (std::size_t j = tab.art_begin; j < n_total; ++j) frozen[j] = true;

    // Phase 2.
    std::vector<Rational> cost2(n_total, Rational(0));
    for (std::size_t j = 0; j < lp.objective.size() && j < tab.n_struct; ++j)
        cost2[j] = lp.objective[j];
    if (!tab.optimize(cost2, frozen)) {
        res.status = LPResult::Status::UNBOUNDED;
        return res;
    }
    res.status = LPResult::Status::OPTIMAL;
    res.x.assign(tab.n_struct, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] < tab.n_struct) res.x[tab.basis[i]] = tab.t[i][n_total];
    res.value = Rational(0);
    for (std::size_t j = 0; j < res.x.size() && j < lp.objective.size(); ++j)
        res.value += lp.objective[j] * res.x[j];
    return res;
}

}  // namespace hessweave
