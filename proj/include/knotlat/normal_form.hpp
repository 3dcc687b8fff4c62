#pragma once

#include <optional>
#include <vector>

#include "knotlat/matrix.hpp"

namespace knotlat {

struct SmithResult {
    IMat u;  // unimodular, rows() x rows() of input
    IMat s;  // diagonal with divisibility chain d1 | d2 | ...
    IMat v;  // unimodular, cols() x cols() of input
};

// U * M * V = S with S diagonal, non-negative, d1 | d2 | ... | dk.
inline SmithResult smith_normal_form(const IMat& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    IMat a = m;
    IMat u = IMat::identity(nr);
    IMat v = IMat::identity(nc);

    auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < nc; ++j) a(dst, j) -= f * a(src, j);
        for (std::size_t j = 0; j < nr; ++j) u(dst, j) -= f * u(src, j);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < nr; ++i) a(i, dst) -= f * a(i, src);
        for (std::size_t i = 0; i < nc; ++i) v(i, dst) -= f * v(i, src);
    };

    std::size_t t = 0;
    while (t < nr && t < nc) {
        // locate smallest nonzero entry in the trailing block
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (a(i, j) == 0) continue;
                Int mag = abs_int(a(i, j));
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if (pj != t) {
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a(i, t) == 0) continue;
                Int q = floor_div(a(i, t), a(t, t));
                row_op(i, t, q);
                if (a(i, t) != 0) {  // remainder smaller than pivot: swap up and restart
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a(t, j) == 0) continue;
                Int q = floor_div(a(t, j), a(t, t));
                col_op(j, t, q);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
        }

        // divisibility of the remaining block by the pivot
        bool divides = true;
        for (std::size_t i = t + 1; i < nr && divides; ++i)
            for (std::size_t j = t + 1; j < nc && divides; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    // fold row i into row t and redo this pivot
                    for (std::size_t jj = 0; jj < nc; ++jj) a(t, jj) += a(i, jj);
                    for (std::size_t jj = 0; jj < nr; ++jj) u(t, jj) += u(i, jj);
                    divides = false;
                }
        if (!divides) continue;

        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < nc; ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < nr; ++j) u(t, j) = -u(t, j);
        }
        ++t;
    }
    return SmithResult{u, a, v};
}

// invariant factors > 1, in divisibility order
inline std::vector<Int> invariant_factors(const IMat& m) {
    SmithResult snf = smith_normal_form(m);
    std::vector<Int> factors;
    std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i)
        if (snf.s(i, i) > 1) factors.push_back(snf.s(i, i));
    return factors;
}

// Column-style Hermite normal form of a nonsingular square matrix:
// H = M * V with V unimodular, H lower triangular, H(i,i) > 0 and
// 0 <= H(i,j) < H(i,i) for j < i.
inline IMat hermite_col(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermite_col: square input required");
    std::size_t n = m.rows();
    IMat a = m;
    for (std::size_t i = 0; i < n; ++i) {
        // clear row i to the right of the diagonal with column gcd steps
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) == 0) continue;
            Int x, y;
            Int g = ext_gcd(a(i, i), a(i, j), x, y);
            Int ai = a(i, i) / g, aj = a(i, j) / g;
            for (std::size_t r = 0; r < n; ++r) {
                Int ci = a(r, i), cj = a(r, j);
                a(r, i) = x * ci + y * cj;
                a(r, j) = ai * cj - aj * ci;
            }
        }
        if (a(i, i) == 0) throw std::invalid_argument("hermite_col: singular input");
        if (a(i, i) < 0)
            for (std::size_t r = 0; r < n; ++r) a(r, i) = -a(r, i);
        for (std::size_t j = 0; j < i; ++j) {
            Int q = floor_div(a(i, j), a(i, i));
            if (q == 0) continue;
            for (std::size_t r = 0; r < n; ++r) a(r, j) -= q * a(r, i);
        }
    }
    return a;
}

// canonical representative of x modulo the column lattice of H (H = hermite_col output)
inline std::vector<Int> reduce_mod_columns(std::vector<Int> x, const IMat& h) {
    std::size_t n = h.rows();
    for (std::size_t i = 0; i < n; ++i) {
        Int q = floor_div(x[i], h(i, i));
        if (q == 0) continue;
        for (std::size_t r = i; r < n; ++r) x[r] -= q * h(r, i);
    }
    return x;
}

// primitive basis of { x : A x = 0 }, as columns
inline IMat integer_kernel(const IMat& a) {
    SmithResult snf = smith_normal_form(a);
    std::size_t n = a.cols();
    std::size_t k = std::min(a.rows(), a.cols());
    std::size_t r = 0;
    while (r < k && snf.s(r, r) != 0) ++r;
    IMat basis(n, n - r);
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j - r) = snf.v(i, j);
    return basis;
}

// one integer solution of A x = b, if any
inline std::optional<std::vector<Int>> solve_integer(const IMat& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
    SmithResult snf = smith_normal_form(a);
    std::size_t nr = a.rows(), nc = a.cols();
    std::vector<Int> ub(nr, 0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nr; ++j) ub[i] += snf.u(i, j) * b[j];
    std::vector<Int> y(nc, 0);
    std::size_t k = std::min(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        Int d = (i < k) ? snf.s(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    std::vector<Int> x(nc, 0);
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nc; ++j) x[i] += snf.v(i, j) * y[j];
    return x;
}

// membership of v in the column lattice of A
inline bool in_column_lattice(const IMat& a, const std::vector<Int>& v) {
    return solve_integer(a, v).has_value();
}

}  // namespace knotlat
