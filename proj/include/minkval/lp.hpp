#pragma once

#include <optional>
#include <vector>

#include "minkval/linalg.hpp"

namespace minkval {

/// Dense two-phase simplex (Bland's rule) over the scalar type.
/// Problem: max c.x subject to A x <= b, x free. Sizes here are tiny
/// (<= 7 structural variables, a few hundred rows), so the classic tableau
/// with exact rational pivots is entirely adequate.
template <class T>
struct LpResult {
    enum Status { Optimal, Unbounded, Infeasible } status;
    T objective{};
    Vec<T> x;
};

template <class T>
class SimplexSolver {
  public:
    LpResult<T> maximize(const Mat<T>& A, const Vec<T>& b, const Vec<T>& c) {
        int m = (int)A.size();
        int d = (int)c.size();
        // Free variables split as x = u - w, u,w >= 0; slack per row.
        // Columns: [u(0..d-1) | w(d..2d-1) | s(2d..2d+m-1) | artificials]
        int nu = 2 * d + m;
        rows_ = m;
        tab_.assign(m + 1, Vec<T>(nu + 1, T(0)));
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            int sgn = ScalarTraits<T>::sign(b[i]) >= 0 ? 1 : -1;
            for (int j = 0; j < d; ++j) {
                tab_[i][j] = T(sgn) * A[i][j];
                tab_[i][d + j] = T(-sgn) * A[i][j];
            }
            tab_[i][2 * d + i] = T(sgn);
            tab_[i][nu] = T(sgn) * b[i];
        }
        // Identify rows that already have a usable slack basis (sgn == +1).
        std::vector<int> art_rows;
        for (int i = 0; i < m; ++i) {
            if (tab_[i][2 * d + i] == T(1)) basis_[i] = 2 * d + i;
            else art_rows.push_back(i);
        }
        int na = (int)art_rows.size();
        if (na > 0) {
            for (auto& row : tab_) row.insert(row.end() - 1, na, T(0));
            for (int k = 0; k < na; ++k) {
                int i = art_rows[k];
                tab_[i][nu + k] = T(1);
                basis_[i] = nu + k;
            }
            int total = nu + na;
            // Phase 1: minimize sum of artificials.
            Vec<T>& obj = tab_[m];
            for (auto& v : obj) v = T(0);
            for (int k = 0; k < na; ++k) obj[nu + k] = T(-1);
            for (int i : art_rows)
                for (int j = 0; j <= total; ++j) obj[j] += tab_[i][j];
            if (!pivot_loop(total)) return {LpResult<T>::Unbounded, T(0), {}};
            if (ScalarTraits<T>::sign(tab_[m][total]) != 0)
                return {LpResult<T>::Infeasible, T(0), {}};
            // Drive any remaining artificial out of the basis.
            for (int i = 0; i < m; ++i) {
                if (basis_[i] < nu) continue;
                int enter = -1;
                for (int j = 0; j < nu; ++j)
                    if (ScalarTraits<T>::sign(tab_[i][j]) != 0) { enter = j; break; }
                if (enter >= 0) do_pivot(i, enter, total);
                // Row all zero over structurals: redundant constraint; leave as is.
            }
            // Remove artificial columns.
            for (auto& row : tab_) row.erase(row.end() - 1 - na, row.end() - 1);
        }
        int total = nu;
        // Phase 2 objective.
        Vec<T>& obj = tab_[rows_];
        for (auto& v : obj) v = T(0);
        for (int j = 0; j < d; ++j) { obj[j] = c[j]; obj[d + j] = -c[j]; }
        // Express objective in terms of the current basis.
        for (int i = 0; i < rows_; ++i) {
            int bj = basis_[i];
            if (bj < 0 || bj >= total) continue;
            if (ScalarTraits<T>::sign(obj[bj]) == 0) continue;
            T f = obj[bj];
            for (int j = 0; j <= total; ++j) obj[j] -= f * tab_[i][j];
        }
        if (!pivot_loop(total)) return {LpResult<T>::Unbounded, T(0), {}};

        Vec<T> sol(2 * d + rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] >= 0 && basis_[i] < (int)sol.size()) sol[basis_[i]] = tab_[i][total];
        Vec<T> x(d);
        for (int j = 0; j < d; ++j) x[j] = sol[j] - sol[d + j];
        return {LpResult<T>::Optimal, -tab_[rows_][total], std::move(x)};
    }

  private:
    Mat<T> tab_;
    std::vector<int> basis_;
    int rows_ = 0;

    void do_pivot(int row, int col, int total) {
        T piv = tab_[row][col];
        for (int j = 0; j <= total; ++j) tab_[row][j] /= piv;
        for (int i = 0; i <= rows_; ++i) {
            if (i == row) continue;
            if (ScalarTraits<T>::sign(tab_[i][col]) == 0) continue;
            T f = tab_[i][col];
            for (int j = 0; j <= total; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    // Bland's rule; returns false on unboundedness.
    bool pivot_loop(int total) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < total; ++j)
                if (ScalarTraits<T>::sign(tab_[rows_][j]) > 0) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            T best{};
            for (int i = 0; i < rows_; ++i) {
                if (ScalarTraits<T>::sign(tab_[i][enter]) <= 0) continue;
                T ratio = tab_[i][total] / tab_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            do_pivot(leave, enter, total);
        }
    }
};

/// max c.x s.t. A x <= b.
template <class T>
LpResult<T> lp_maximize(const Mat<T>& A, const Vec<T>& b, const Vec<T>& c) {
    SimplexSolver<T> s;
    return s.maximize(A, b, c);
}

/// Interior-point probe for the system {<a_i,x> <= b_i}: maximizes the
/// uniform slack t (capped at 1). Returns (t*, x*): t* > 0 means x* is
/// strictly inside, t* == 0 a touching/lower-dimensional set, t* < 0 empty.
template <class T>
std::pair<T, Vec<T>> max_slack_point(const std::vector<std::pair<Vec<T>, T>>& hs, int dim) {
    int m = (int)hs.size();
    Mat<T> A(m + 1, Vec<T>(dim + 1, T(0)));
    Vec<T> b(m + 1);
    for (int i = 0; i < m; ++i) {
        T s(0);
        for (const auto& v : hs[i].first) s += (ScalarTraits<T>::sign(v) >= 0 ? v : -v);
        if (ScalarTraits<T>::sign(s) == 0) s = T(1);
        for (int j = 0; j < dim; ++j) A[i][j] = hs[i].first[j];
        A[i][dim] = s;
        b[i] = hs[i].second;
    }
    A[m][dim] = T(1);  // t <= 1 keeps the LP bounded
    b[m] = T(1);
    Vec<T> c(dim + 1, T(0));
    c[dim] = T(1);
    auto r = lp_maximize(A, b, c);
    if (r.status != LpResult<T>::Optimal) throw GeometryError("slack LP failed");
    Vec<T> x(r.x.begin(), r.x.begin() + dim);
    return {r.x[dim], x};
}

}  // namespace minkval
