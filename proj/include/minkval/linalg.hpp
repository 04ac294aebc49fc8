#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

#include "minkval/scalar.hpp"

namespace minkval {

/// Dense vector over the scalar type. Dimensions here are tiny (<= 6 for
/// geometry, a bit more for linear solves), so everything is elementary
/// Gaussian elimination with exact pivoting in rational mode.
template <class T>
using Vec = std::vector<T>;

template <class T>
using Mat = std::vector<std::vector<T>>;  // row-major

template <class T>
Vec<T> vec_zero(int n) { return Vec<T>(static_cast<size_t>(n), T(0)); }

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    assert(a.size() == b.size());
    T s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
    assert(a.size() == b.size());
    Vec<T> r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
    assert(a.size() == b.size());
    Vec<T> r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

template <class T>
Vec<T> scale(const Vec<T>& a, const T& c) {
    Vec<T> r(a);
    for (auto& x : r) x *= c;
    return r;
}

template <class T>
Vec<T> neg(const Vec<T>& a) {
    Vec<T> r(a);
    for (auto& x : r) x = -x;
    return r;
}

template <class T>
T norm2(const Vec<T>& a) { return dot(a, a); }

inline double norm(const Vec<double>& a) { return std::sqrt(norm2(a)); }

inline Vec<double> normalized(const Vec<double>& a) {
    double n = norm(a);
    Vec<double> r(a);
    if (n > 0)
        for (auto& x : r) x /= n;
    return r;
}

template <class T>
Vec<T> mat_apply(const Mat<T>& M, const Vec<T>& x) {
    Vec<T> r;
    r.reserve(M.size());
    for (const auto& row : M) r.push_back(dot(row, x));
    return r;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& A, const Mat<T>& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    Mat<T> C(n, Vec<T>(m, T(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == T(0)) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

template <class T>
Mat<T> mat_identity(int n) {
    Mat<T> I(static_cast<size_t>(n), Vec<T>(static_cast<size_t>(n), T(0)));
    for (int i = 0; i < n; ++i) I[i][i] = T(1);
    return I;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& A) {
    if (A.empty()) return {};
    Mat<T> R(A[0].size(), Vec<T>(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[0].size(); ++j) R[j][i] = A[i][j];
    return R;
}

namespace detail {
template <class T>
int pivot_row(const Mat<T>& A, int col, int from) {
    int best = -1;
    if constexpr (ScalarTraits<T>::exact) {
        for (int r = from; r < (int)A.size(); ++r)
            if (A[r][col] != T(0)) return r;
        return best;
    } else {
        double mx = 0;
        for (int r = from; r < (int)A.size(); ++r) {
            double v = std::abs(to_double(A[r][col]));
            if (v > mx) { mx = v; best = r; }
        }
        if (mx <= ScalarTraits<T>::eps()) return -1;
        return best;
    }
}
}  // namespace detail

template <class T>
T det(Mat<T> A) {
    int n = (int)A.size();
    T d(1);
    for (int c = 0; c < n; ++c) {
        int p = detail::pivot_row(A, c, c);
        if (p < 0) return T(0);
        if (p != c) { std::swap(A[p], A[c]); d = -d; }
        d *= A[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (A[r][c] == T(0)) continue;
            T f = A[r][c] / A[c][c];
            for (int cc = c; cc < n; ++cc) A[r][cc] -= f * A[c][cc];
        }
    }
    return d;
}

/// Solve A x = b; returns false if A is singular (within tolerance in
/// float mode).
template <class T>
bool solve(Mat<T> A, Vec<T> b, Vec<T>& x) {
    int n = (int)A.size();
    for (int c = 0; c < n; ++c) {
        int p = detail::pivot_row(A, c, c);
        if (p < 0) return false;
        if (p != c) { std::swap(A[p], A[c]); std::swap(b[p], b[c]); }
        for (int r = c + 1; r < n; ++r) {
            if (A[r][c] == T(0)) continue;
            T f = A[r][c] / A[c][c];
            for (int cc = c; cc < n; ++cc) A[r][cc] -= f * A[c][cc];
            b[r] -= f * b[c];
        }
    }
    x.assign(n, T(0));
    for (int r = n - 1; r >= 0; --r) {
        T s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return true;
}

/// Row-reduce and return rank; optionally collects indices of pivot columns.
template <class T>
int rank(Mat<T> A, std::vector<int>* pivot_cols = nullptr) {
    int rows = (int)A.size();
    if (rows == 0) return 0;
    int cols = (int)A[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = detail::pivot_row(A, c, r);
        if (p < 0) continue;
        std::swap(A[p], A[r]);
        for (int rr = r + 1; rr < rows; ++rr) {
            if (A[rr][c] == T(0)) continue;
            T f = A[rr][c] / A[r][c];
            for (int cc = c; cc < cols; ++cc) A[rr][cc] -= f * A[r][cc];
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

/// Null space basis of A (rows = equations). Exact in rational mode.
template <class T>
std::vector<Vec<T>> null_space(Mat<T> A) {
    if (A.empty()) return {};
    int rows = (int)A.size(), cols = (int)A[0].size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = detail::pivot_row(A, c, r);
        if (p < 0) continue;
        std::swap(A[p], A[r]);
        for (int rr = 0; rr < rows; ++rr) {
            if (rr == r || A[rr][c] == T(0)) continue;
            T f = A[rr][c] / A[r][c];
            for (int cc = 0; cc < cols; ++cc) A[rr][cc] -= f * A[r][cc];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Vec<T>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec<T> v(cols, T(0));
        v[c] = T(1);
        for (int i = 0; i < (int)pivot_col.size(); ++i)
            v[pivot_col[i]] = -A[i][c] / A[i][pivot_col[i]];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Vec<T> convert_vec(const Vec<Rat>& v) {
    Vec<T> r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if constexpr (ScalarTraits<T>::exact) r.push_back(x);
        else r.push_back(to_double(x));
    }
    return r;
}

inline Vec<double> vec_to_double(const Vec<Rat>& v) {
    Vec<double> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(to_double(x));
    return r;
}

}  // namespace minkval
