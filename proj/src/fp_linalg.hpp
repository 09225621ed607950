#pragma once

#include <utility>
#include <vector>

namespace hermlat::fp {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

inline long md(long a, long p) { return ((a % p) + p) % p; }

inline long inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = md(a, p);
    while (nr) {
        long q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    return md(t, p);
}

// Reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(Mat& m, long p) {
    std::vector<int> piv;
    if (m.empty()) return piv;
    int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (md(m[i][c], p)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[r]);
        long s = inv(m[r][c], p);
        for (auto& x : m[r]) x = md(x * s, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !md(m[i][c], p)) continue;
            long f = md(m[i][c], p);
            for (int j = 0; j < cols; ++j) m[i][j] = md(m[i][j] - f * m[r][j], p);
        }
        piv.push_back(c);
        ++r;
    }
    m.resize(r);
    return piv;
}

inline int rank(Mat m, long p) { return static_cast<int>(rref(m, p).size()); }

// Basis of {y : m y = 0}.
inline Mat right_null(Mat m, long p, int cols) {
    std::vector<int> piv = rref(m, p);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    Mat out;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec y(cols, 0);
        y[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) y[piv[i]] = md(-m[i][f], p);
        out.push_back(y);
    }
    return out;
}

// Basis of {a : a m = 0}.
inline Mat left_null(const Mat& m, long p, int rows) {
    if (rows == 0) return {};
    int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    Mat t(cols, Vec(rows, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t[j][i] = m[i][j];
    if (cols == 0) {
        Mat out;
        for (int i = 0; i < rows; ++i) {
            Vec e(rows, 0);
            e[i] = 1;
            out.push_back(e);
        }
        return out;
    }
    return right_null(t, p, rows);
}

inline Mat mul(const Mat& a, const Mat& b, long p) {
    if (a.empty()) return {};
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat out(n, Vec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (!a[i][l]) continue;
            for (size_t j = 0; j < m; ++j) out[i][j] = md(out[i][j] + a[i][l] * b[l][j], p);
        }
    return out;
}

inline long dot(const Vec& x, const Mat& b, const Vec& y, long p) {
    long s = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (size_t j = 0; j < y.size(); ++j) s = md(s + x[i] * b[i][j] % p * y[j], p);
    }
    return s;
}

}  // namespace hermlat::fp
