#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "knotlat/numeric.hpp"

namespace knotlat {

// Dense row-major matrix over an exact scalar type (Int or Rat).
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool operator<(const Mat& o) const {  // lexicographic, for canonical choices
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        return data_ < o.data_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
        Mat s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
        return s;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
        Mat s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
        return s;
    }

    Mat operator-() const {
        Mat s = *this;
        for (auto& v : s.data_) v = -v;
        return s;
    }

    Mat operator*(const T& scalar) const {
        Mat s = *this;
        for (auto& v : s.data_) v *= scalar;
        return s;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_antisymmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

inline QMat to_rational(const IMat& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = rat(m(i, j));
    return q;
}

// Fraction-free determinant (Bareiss).
inline Int det(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IMat a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

inline Rat det(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    QMat a = m;
    Rat d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == Rat(0)) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            a.swap_rows(k, p);
            d = -d;
        }
        d *= a(k, k);
        Rat inv = Rat(1) / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat f = a(i, k) * inv;
            if (f == Rat(0)) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

// Inverse over the rationals; throws on singular input.
inline QMat inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    QMat a = m;
    QMat inv = QMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == Rat(0)) ++p;
        if (p == n) throw std::invalid_argument("singular matrix");
        if (p != k) {
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
        }
        Rat piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == Rat(0)) continue;
            Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline std::size_t rank(QMat q) {
    std::size_t r = 0;
    std::size_t n = q.rows(), m = q.cols();
    std::size_t row = 0;
    for (std::size_t cc = 0; cc < m && row < n; ++cc) {
        std::size_t p = row;
        while (p < n && q(p, cc) == Rat(0)) ++p;
        if (p == n) continue;
        q.swap_rows(row, p);
        for (std::size_t i = row + 1; i < n; ++i) {
            if (q(i, cc) == Rat(0)) continue;
            Rat f = q(i, cc) / q(row, cc);
            for (std::size_t j = cc; j < m; ++j) q(i, j) -= f * q(row, j);
        }
        ++row;
        ++r;
    }
    return r;
}

inline std::size_t rank(const IMat& a) { return rank(to_rational(a)); }

template <class T>
std::ostream& operator<<(std::ostream& os, const Mat<T>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << to_string(m(i, j));
        }
        os << "]";
        if (i + 1 < m.rows()) os << ", ";
    }
    return os << "]";
}

}  // namespace knotlat
