#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/errors.hpp"

#include <string>
#include <vector>

namespace groupeq {

// Dense row-major matrix over Int.  Shapes with zero rows or columns are legal.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {
        if (r < 0 || c < 0) throw Error("matrix dimensions must be nonnegative");
    }

    Int& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Int& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw Error("matrix product shape mismatch");
    IntMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    }
    return r;
}

inline std::string print_matrix(const IntMat& m) {
    std::string s;
    for (int i = 0; i < m.rows; ++i) {
        s += i == 0 ? "(" : " (";
        for (int j = 0; j < m.cols; ++j) {
            if (j) s += ' ';
            s += m(i, j).str();
        }
        s += ")\n";
    }
    return s;
}

}  // namespace groupeq
