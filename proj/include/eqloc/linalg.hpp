#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "eqloc/rational.hpp"

// Small exact integer linear algebra: determinants, rational solves and
// Smith normal form.  Everything here is deterministic; pivots are chosen
// by smallest absolute value with lowest index as tie break.

namespace eqloc {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;

inline IntMat identity_matrix(std::size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Int det(IntMat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Solves A x = b exactly over the rationals; nullopt when A is singular.
// A must be square.
inline std::optional<std::vector<Rat>> solve(const IntMat& a, const std::vector<Int>& b) {
    const std::size_t n = a.size();
    RatMat m(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
        m[i][n] = Rat(b[i]);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        const Rat inv = Rat(1) / m[col][col];
        for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rat f = m[i][col];
            for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

// Exact inverse of a square integer matrix; nullopt when singular.
inline std::optional<RatMat> inverse(const IntMat& a) {
    const std::size_t n = a.size();
    RatMat m(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
        m[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        const Rat inv = Rat(1) / m[col][col];
        for (std::size_t j = 0; j < 2 * n; ++j) m[col][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rat f = m[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    RatMat out(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

// Integer inverse of a unimodular matrix.
inline IntMat unimodular_inverse(const IntMat& a) {
    auto inv = inverse(a);
    if (!inv) throw InternalError("unimodular_inverse: singular matrix");
    IntMat out(a.size(), std::vector<Int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (denominator((*inv)[i][j]) != 1)
                throw InternalError("unimodular_inverse: non-integer entry");
            out[i][j] = numerator((*inv)[i][j]);
        }
    return out;
}

struct SmithForm {
    IntMat s;  // diagonal, d_1 | d_2 | ..., all nonnegative
    IntMat u;  // rows x rows unimodular
    IntMat v;  // cols x cols unimodular, u * a * v = s
};

// Smith normal form by elementary row/column reduction.
inline SmithForm smith_normal_form(IntMat a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    SmithForm out{std::move(a), identity_matrix(rows), identity_matrix(cols)};
    IntMat& s = out.s;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(s[i], s[j]);
        std::swap(out.u[i], out.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : s) std::swap(row[i], row[j]);
        for (auto& row : out.v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < cols; ++j) s[dst][j] += f * s[src][j];
        for (std::size_t j = 0; j < rows; ++j) out.u[dst][j] += f * out.u[src][j];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < rows; ++i) s[i][dst] += f * s[i][src];
        for (std::size_t i = 0; i < cols; ++i) out.v[i][dst] += f * out.v[i][src];
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : s[i]) x = -x;
        for (auto& x : out.u[i]) x = -x;
    };

    const std::size_t limit = rows < cols ? rows : cols;
    for (std::size_t t = 0; t < limit; ++t) {
        for (;;) {
            // Smallest nonzero |entry| in the remaining block as pivot.
            std::size_t pi = t, pj = t;
            Int best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    Int v = s[i][j] < 0 ? Int(-s[i][j]) : s[i][j];
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;  // block is zero
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);
            if (s[t][t] < 0) negate_row(t);

            bool reduced = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s[i][t] == 0) continue;
                Int q = s[i][t] / s[t][t];
                add_row(i, t, -q);
                if (s[i][t] != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s[t][j] == 0) continue;
                Int q = s[t][j] / s[t][t];
                add_col(j, t, -q);
                if (s[t][j] != 0) reduced = false;
            }
            if (!reduced) continue;

            // Enforce divisibility of the rest of the block by the pivot.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s[i][j] % s[t][t] != 0) {
                        add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
    }
    return out;
}

// Basis of {x : a x = 0} as columns, via the Smith form.
inline std::vector<std::vector<Int>> kernel_basis(const IntMat& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    if (cols == 0) return {};
    SmithForm f = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = 0; j < cols; ++j) {
        bool zero_col = j >= rows || f.s[j][j] == 0;
        if (!zero_col) continue;
        std::vector<Int> col(cols);
        for (std::size_t i = 0; i < cols; ++i) col[i] = f.v[i][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

}  // namespace eqloc
