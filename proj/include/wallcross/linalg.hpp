#ifndef WALLCROSS_LINALG_HPP
#define WALLCROSS_LINALG_HPP

#include "rational.hpp"

#include <algorithm>
#include <utility>

namespace wallcross {

struct Rref {
    QMat m;
    std::vector<std::size_t> pivots;
};

inline Rref rref(QMat a)
{
    Rref out;
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Q inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(a);
    return out;
}

inline std::size_t rank(const QMat& a) { return rref(a).pivots.size(); }

// basis of {x : a x = 0}
inline QMat nullspace(const QMat& a, std::size_t cols)
{
    QMat basis;
    if (a.empty()) {
        for (std::size_t j = 0; j < cols; ++j) {
            QVec v(cols, Q(0));
            v[j] = 1;
            basis.push_back(v);
        }
        return basis;
    }
    Rref rr = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.m[i][f];
        basis.push_back(v);
    }
    return basis;
}

inline QMat transpose(const QMat& a)
{
    if (a.empty()) return {};
    QMat t(a[0].size(), QVec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline QMat inverse(const QMat& a)
{
    std::size_t n = a.size();
    QMat aug(n, QVec(2 * n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error("DimensionMismatch", "inverse of a non-square matrix");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    Rref rr = rref(aug);
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw Error("Singular", "matrix is not invertible");
    QMat inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = rr.m[i][n + j];
    return inv;
}

inline QVec mat_vec(const QMat& a, const QVec& x)
{
    QVec r;
    r.reserve(a.size());
    for (auto& row : a) r.push_back(dot(row, x));
    return r;
}

inline QMat mat_mul(const QMat& a, const QMat& b)
{
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    QMat c(n, QVec(m, Q(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

// solve a x = b; returns false if inconsistent
inline bool solve(const QMat& a, const QVec& b, QVec& x)
{
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    QMat aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    Rref rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == cols) return false;
    x.assign(cols, Q(0));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.m[i][cols];
    return true;
}

struct SmithForm {
    std::vector<std::vector<Z>> u;    // rows x rows, unimodular
    std::vector<std::vector<Z>> v;    // cols x cols, unimodular
    std::vector<std::vector<Z>> d;    // u * a * v
    std::vector<Z> diagonal;          // nonzero invariant factors
};

// Smith normal form over Z: u a v = d with d diagonal, d_i | d_{i+1}
inline SmithForm smith_normal_form(std::vector<std::vector<Z>> a)
{
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    auto ident = [](std::size_t n) {
        std::vector<std::vector<Z>> e(n, std::vector<Z>(n, Z(0)));
        for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
        return e;
    };
    SmithForm s;
    s.u = ident(rows);
    s.v = ident(cols);
    auto abs_z = [](const Z& x) { return x < 0 ? Z(-x) : x; };
    auto row_op = [&](std::size_t i, std::size_t j, const Z& f) { // row_i -= f row_j
        for (std::size_t c = 0; c < cols; ++c) a[i][c] -= f * a[j][c];
        for (std::size_t c = 0; c < rows; ++c) s.u[i][c] -= f * s.u[j][c];
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Z& f) { // col_i -= f col_j
        for (std::size_t r = 0; r < rows; ++r) a[r][i] -= f * a[r][j];
        for (std::size_t r = 0; r < cols; ++r) s.v[r][i] -= f * s.v[r][j];
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(s.u[i], s.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        for (auto& r : s.v) std::swap(r[i], r[j]);
    };
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the remaining block
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!found || abs_z(a[i][j]) < abs_z(a[pi][pj]))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Z q = a[i][t] / a[t][t];
                row_op(i, t, q);
                if (a[i][t] != 0) {
                    swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Z q = a[t][j] / a[t][t];
                col_op(j, t, q);
                if (a[t][j] != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility condition
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t c = 0; c < cols; ++c) a[t][c] += a[i][c];
                            for (std::size_t c = 0; c < rows; ++c) s.u[t][c] += s.u[i][c];
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0) {
            for (std::size_t c = 0; c < cols; ++c) a[t][c] = -a[t][c];
            for (std::size_t c = 0; c < rows; ++c) s.u[t][c] = -s.u[t][c];
        }
        s.diagonal.push_back(a[t][t]);
        ++t;
    }
    s.d = std::move(a);
    return s;
}

} // namespace wallcross

#endif
