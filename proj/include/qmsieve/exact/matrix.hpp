#ifndef QMSIEVE_EXACT_MATRIX_HPP
#define QMSIEVE_EXACT_MATRIX_HPP

#include "qmsieve/exact/arith.hpp"

#include <cstddef>
#include <ostream>
#include <vector>

namespace qms {

/* Dense row-major matrix. Rows are the primary view: lattices are
 * spanned by rows throughout the library. */
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::vector<std::vector<T>> const& rows)
        : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size())
    {
        a_.reserve(rows_ * cols_);
        for (auto const& r : rows) {
            if (r.size() != cols_)
                throw InvalidInput("Matrix: ragged rows");
            for (auto const& x : r)
                a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    T const& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, std::vector<T> const& r)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = r[j];
    }

    void append_row(std::vector<T> const& r)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = r.size();
        if (r.size() != cols_)
            throw InvalidInput("Matrix: appended row has wrong length");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < cols_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(Matrix const& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<T> const& data() const { return a_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <class T>
Matrix<T> operator*(Matrix<T> const& a, Matrix<T> const& b)
{
    if (a.cols() != b.rows())
        throw InvalidInput("Matrix product: dimension mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

/* Row vector times matrix. */
template <class T>
std::vector<T> operator*(std::vector<T> const& v, Matrix<T> const& m)
{
    if (v.size() != m.rows())
        throw InvalidInput("vector-matrix product: dimension mismatch");
    std::vector<T> r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] += v[i] * m(i, j);
    }
    return r;
}

template <class T>
std::ostream& operator<<(std::ostream& os, Matrix<T> const& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

RatMatrix to_rat(IntMatrix const& m);

/* Fraction-free determinant (Bareiss). */
Int determinant(IntMatrix m);
Rat determinant(RatMatrix const& m);

/* Inverse over Q; throws std::domain_error if singular. */
RatMatrix inverse(RatMatrix const& m);

/* Solves x * m = v for a row vector x (m square nonsingular). */
RatVector solve_left(RatMatrix const& m, RatVector const& v);

/* Integer matrix from a rational one, throwing if some entry is not integral. */
IntMatrix to_int_exact(RatMatrix const& m);

/* Characteristic polynomial det(X I - m), coefficients lowest degree first
 * (Berkowitz, division free). */
IntVector charpoly_coefficients(IntMatrix const& m);

} // namespace qms

#endif
