#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "knotlat/matrix.hpp"

namespace knotlat {

struct ZeroPolynomialError : std::runtime_error {
    ZeroPolynomialError() : std::runtime_error("degenerate pairing: det(tA - A^T) is identically zero") {}
};

// Integer polynomial in t, coefficients lowest degree first. Zero = empty vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly constant(const Int& a) { return IntPoly(std::vector<Int>{a}); }

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }

    Int at(const Int& t) const {
        Int v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
        return v;
    }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator+(const IntPoly& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return IntPoly(std::move(r));
    }

    IntPoly operator-(const IntPoly& o) const {
        std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return IntPoly(std::move(r));
    }

    IntPoly operator*(const IntPoly& o) const {
        if (is_zero() || o.is_zero()) return IntPoly();
        std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntPoly(std::move(r));
    }

    IntPoly operator-() const {
        std::vector<Int> r = c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }

    // substitute t -> 1/t and clear denominators: reverses the coefficients
    IntPoly reciprocal() const { return IntPoly(std::vector<Int>(c_.rbegin(), c_.rend())); }

    // exact division by (t - 1); caller must ensure divisibility
    IntPoly divide_t_minus_1() const {
        if (at(1) != 0) throw std::logic_error("polynomial not divisible by t-1");
        std::vector<Int> q(c_.size() - 1, 0);
        Int carry = 0;
        for (std::size_t i = c_.size(); i-- > 1;) {
            carry += c_[i];
            q[i - 1] = carry;
        }
        return IntPoly(std::move(q));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            Int a = c_[i];
            if (!s.empty()) {
                s += (a > 0) ? " + " : " - ";
                if (a < 0) a = -a;
            } else if (a < 0) {
                s += "-";
                a = -a;
            }
            if (i == 0)
                s += a.str();
            else {
                if (a != 1) s += a.str() + "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// Canonical form modulo the units +-t^k, +-(t-1)^l: strip powers of t,
// strip all (t-1) factors, and normalize the leading coefficient positive.
inline IntPoly canonical_form(IntPoly p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    std::vector<Int> c = p.coeffs();
    std::size_t shift = 0;
    while (shift < c.size() && c[shift] == 0) ++shift;
    if (shift) p = IntPoly(std::vector<Int>(c.begin() + shift, c.end()));
    while (!p.is_zero() && p.degree() >= 1 && p.at(1) == 0) p = p.divide_t_minus_1();
    if (p.coeffs().back() < 0) p = -p;
    return p;
}

// det(M) for a square matrix of polynomials, by interpolation at integer nodes.
inline IntPoly poly_matrix_det(const std::vector<std::vector<IntPoly>>& m) {
    std::size_t n = m.size();
    if (n == 0) return IntPoly::constant(1);
    int maxdeg = 0;
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("poly_matrix_det: non-square input");
        int rowdeg = 0;
        for (const auto& p : row) rowdeg = std::max(rowdeg, std::max(0, p.degree()));
        maxdeg += rowdeg;
    }
    int npts = maxdeg + 1;
    std::vector<Int> xs(npts), ys(npts);
    for (int k = 0; k < npts; ++k) {
        Int t = k;
        IMat a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = m[i][j].at(t);
        xs[k] = t;
        ys[k] = det(a);
    }
    // Lagrange interpolation over Q; the result must be integral.
    std::vector<Rat> acc(npts, Rat(0));
    for (int k = 0; k < npts; ++k) {
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (int j = 0; j < npts; ++j) {
            if (j == k) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i] -= basis[i] * rat(xs[j]);
                next[i + 1] += basis[i];
            }
            basis = std::move(next);
            denom *= rat(xs[k]) - rat(xs[j]);
        }
        Rat w = rat(ys[k]) / denom;
        for (std::size_t i = 0; i < basis.size(); ++i) acc[i] += basis[i] * w;
    }
    std::vector<Int> coeffs(npts, 0);
    for (int i = 0; i < npts; ++i) {
        if (!is_integer(acc[i])) throw std::logic_error("poly_matrix_det: non-integral interpolation");
        coeffs[i] = acc[i].numerator();
    }
    return IntPoly(std::move(coeffs));
}

// det(t*A - A^T)
inline IntPoly pairing_polynomial(const IMat& a) {
    std::size_t n = a.rows();
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = IntPoly(std::vector<Int>{-a(j, i), a(i, j)});
    return poly_matrix_det(m);
}

}  // namespace knotlat
