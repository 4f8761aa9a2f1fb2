#ifndef STRATA_MATRIX_HPP
#define STRATA_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "strata/error.hpp"
#include "strata/rational.hpp"
#include "strata/scalar.hpp"

namespace strata {

/// Dense row-major matrix over an exact field (Rational or Scalar) or the integers.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::Internal, "matrix shape mismatch");
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

/// Predicate deciding whether a field element may be used as a pivot.
template <class T>
using PivotTest = std::function<bool(const T&)>;

/**
 * Gauss-Jordan elimination to reduced row echelon form, in place.
 * Returns the pivot columns. For Scalars the pivot test should check
 * nonvanishing at the evaluation point so denominators stay valid there.
 */
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, const PivotTest<T>& usable) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::optional<std::size_t> p;
        for (std::size_t i = r; i < m.rows(); ++i)
            if (usable(m(i, c))) {
                p = i;
                break;
            }
        if (!p) continue;
        m.swap_rows(r, *p);
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == T(0)) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline PivotTest<Rational> rational_pivot() {
    return [](const Rational& x) { return x != 0; };
}

inline PivotTest<Scalar> scalar_pivot(const ParamRegistry& reg) {
    return [&reg](const Scalar& x) { return !x.is_zero() && evaluate_at(x, reg) != 0; };
}

template <class T>
std::size_t rank(Matrix<T> m, const PivotTest<T>& usable) {
    return row_reduce(m, usable).size();
}

/// Solves A X = B for square A invertible under the pivot test; nullopt if singular.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b, const PivotTest<T>& usable) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) fail(ErrorKind::Internal, "solve: shape mismatch");
    Matrix<T> aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
    }
    auto piv = row_reduce(aug, usable);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix<T> x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
    return x;
}

Matrix<Rational> evaluate_matrix(const Matrix<Scalar>& m, const ParamRegistry& reg);

/// Determinant over the rationals by elimination.
Rational determinant(Matrix<Rational> m);

/// Basis of the right null space {x : m x = 0}.
std::vector<std::vector<Rational>> null_space(const Matrix<Rational>& m);

}  // namespace strata

#endif
