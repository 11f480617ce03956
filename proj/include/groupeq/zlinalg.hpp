#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/intmat.hpp"

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SNFResult {
    IntMat d;
    IntMat u;  // rows x rows
    IntMat v;  // cols x cols
};

inline SNFResult smith_normal_form(const IntMat& a) {
    SNFResult r{a, IntMat::identity(a.rows), IntMat::identity(a.cols)};
    IntMat& d = r.d;
    IntMat& u = r.u;
    IntMat& v = r.v;
    const int n = a.rows, m = a.cols;

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < m; ++k) std::swap(d(i, k), d(j, k));
        for (int k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < n; ++k) std::swap(d(k, i), d(k, j));
        for (int k = 0; k < m; ++k) std::swap(v(k, i), v(k, j));
    };
    auto add_row = [&](int dst, int src, const Int& q) {  // row dst += q * row src
        if (q == 0) return;
        for (int k = 0; k < m; ++k) d(dst, k) += q * d(src, k);
        for (int k = 0; k < n; ++k) u(dst, k) += q * u(src, k);
    };
    auto add_col = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int k = 0; k < n; ++k) d(k, dst) += q * d(k, src);
        for (int k = 0; k < m; ++k) v(k, dst) += q * v(k, src);
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < m; ++k) d(i, k) = -d(i, k);
        for (int k = 0; k < n; ++k) u(i, k) = -u(i, k);
    };

    int t = 0;
    while (t < n && t < m) {
        // Smallest nonzero entry (by absolute value) of the trailing block
        // becomes the pivot; first such in row-major order on ties.  Re-picking
        // it on every round keeps the clearing quotients small, which keeps
        // the entries from blowing up while the block is reduced.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j) {
                if (d(i, j) == 0) continue;
                Int mag = abs(d(i, j));
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool again = false;
        for (int i = t + 1; i < n && !again; ++i) {
            if (d(i, t) == 0) continue;
            add_row(i, t, -(d(i, t) / d(t, t)));
            if (d(i, t) != 0) again = true;  // remainder is a new smaller pivot
        }
        for (int j = t + 1; j < m && !again; ++j) {
            if (d(t, j) == 0) continue;
            add_col(j, t, -(d(t, j) / d(t, t)));
            if (d(t, j) != 0) again = true;
        }
        if (!again) {
            // Pivot must divide the rest of the block for the divisor chain.
            // Folding a violating row into row t plants an entry the pivot
            // cannot clear exactly, so the next round shrinks the pivot.
            for (int i = t + 1; i < n && !again; ++i)
                for (int j = t + 1; j < m && !again; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(t, i, 1);
                        again = true;
                    }
        }
        if (again) continue;
        if (d(t, t) < 0) negate_row(t);
        ++t;
    }
    return r;
}

inline std::vector<Int> diagonal(const IntMat& d) {
    std::vector<Int> out;
    for (int i = 0; i < d.rows && i < d.cols; ++i)
        if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
}

inline int rank(const IntMat& a) { return static_cast<int>(diagonal(smith_normal_form(a).d).size()); }

// Basis of the integer kernel lattice {x : A x = 0}; the lattice is saturated
// (a primitive vector of the rational kernel lies in it).  Columns r..m-1 of V.
inline std::vector<std::vector<Int>> kernel_basis(const IntMat& a) {
    SNFResult s = smith_normal_form(a);
    int r = static_cast<int>(diagonal(s.d).size());
    std::vector<std::vector<Int>> basis;
    for (int j = r; j < a.cols; ++j) {
        std::vector<Int> col(a.cols);
        for (int i = 0; i < a.cols; ++i) col[i] = s.v(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

// Degree assignment to the unknowns making every equation degree zero, with
// the degrees coprime.  Exists iff rank < number of unknowns.
struct Indexing {
    std::vector<Int> degrees;  // aligned with the unknown list
};

inline Indexing make_indexing(const IntMat& exponent_mat) {
    auto basis = kernel_basis(exponent_mat);
    if (basis.empty()) throw Error("no indexing exists; Theorem 1 hypothesis fails");
    std::vector<Int> v = basis.front();
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
    return Indexing{std::move(v)};
}

// Bezout coefficients: returns c with sum c_i * d_i = gcd(d).  Used to build a
// degree-one word from a coprime degree vector.
inline std::vector<Int> bezout(const std::vector<Int>& d) {
    std::vector<Int> c(d.size(), 0);
    Int g = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        if (g == 0) {
            g = abs(d[i]);
            c[i] = d[i] > 0 ? 1 : -1;
            continue;
        }
        // extended gcd of (g, d[i])
        Int a = g, b = abs(d[i]);
        Int x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
            Int q = a / b;
            a -= q * b;
            std::swap(a, b);
            Int nx = x0 - q * x1;
            x0 = x1;
            x1 = nx;
            Int ny = y0 - q * y1;
            y0 = y1;
            y1 = ny;
        }
        // a = x0 * g + y0 * |d[i]|
        for (std::size_t j = 0; j < i; ++j) c[j] *= x0;
        c[i] = d[i] > 0 ? y0 : -y0;
        g = a;
    }
    if (g == 0) throw Error("bezout of the zero vector");
    return c;
}

}  // namespace groupeq
