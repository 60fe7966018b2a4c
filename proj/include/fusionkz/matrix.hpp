#pragma once

#include "fusionkz/errors.hpp"
#include "fusionkz/execution.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fusionkz {

template <class T> using Vector = std::vector<T>;

/// Dense row-major matrix over an exact or high-precision scalar.
template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    Vector<T> column(std::size_t c) const {
        Vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }
    void set_column(std::size_t c, std::span<const T> v) {
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    const std::vector<T> &data() const { return data_; }
    std::vector<T> &data() { return data_; }

    bool operator==(const Matrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix &operator+=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Matrix &operator*=(const T &s) {
        for (auto &x : data_)
            x *= s;
        return *this;
    }

  private:
    void check_same_shape(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T> Matrix<T> operator+(Matrix<T> a, const Matrix<T> &b) {
    return a += b;
}
template <class T> Matrix<T> operator-(Matrix<T> a, const Matrix<T> &b) {
    return a -= b;
}
template <class T> Matrix<T> operator*(Matrix<T> a, const T &s) { return a *= s; }

template <class T>
Matrix<T> multiply(const Matrix<T> &a, const Matrix<T> &b,
                   Execution exec = Execution::serial) {
    if (a.cols() != b.rows())
        throw DimensionError("inner dimensions differ in matrix product");
    Matrix<T> c(a.rows(), b.cols());
    const auto n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T &aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

template <class T> Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
    return multiply(a, b);
}

template <class T> Vector<T> operator*(const Matrix<T> &a, std::span<const T> v) {
    if (a.cols() != v.size())
        throw DimensionError("matrix-vector size mismatch");
    Vector<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (v[k] != 0)
                out[i] += a(i, k) * v[k];
    return out;
}
template <class T> Vector<T> operator*(const Matrix<T> &a, const Vector<T> &v) {
    return a * std::span<const T>(v);
}

template <class T> Matrix<T> transpose(const Matrix<T> &a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = a(i, j);
    return t;
}

/// Kronecker product; index (i, j) of the result block is i * b.rows() + j.
template <class T> Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b) {
    Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T &aij = a(i, j);
            if (aij == 0)
                continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

template <class T> Matrix<T> commutator(const Matrix<T> &a, const Matrix<T> &b) {
    return a * b - b * a;
}

template <class T> bool is_zero(const Matrix<T> &a) {
    for (const auto &x : a.data())
        if (x != 0)
            return false;
    return true;
}

template <class T> bool is_zero(const Vector<T> &v) {
    for (const auto &x : v)
        if (x != 0)
            return false;
    return true;
}

/// Rows of `a` selected by `idx`, all columns.
template <class T>
Matrix<T> select_rows(const Matrix<T> &a, std::span<const std::size_t> idx) {
    Matrix<T> out(idx.size(), a.cols());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(idx[r], c);
    return out;
}

template <class T>
Matrix<T> submatrix(const Matrix<T> &a, std::span<const std::size_t> rows,
                    std::span<const std::size_t> cols) {
    Matrix<T> out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(r, c) = a(rows[r], cols[c]);
    return out;
}

/// Matrix whose columns are the given vectors.
template <class T>
Matrix<T> from_columns(const std::vector<Vector<T>> &cols, std::size_t rows) {
    Matrix<T> m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        m.set_column(c, cols[c]);
    return m;
}

template <class T> Matrix<T> power(const Matrix<T> &a, unsigned exponent) {
    Matrix<T> result = Matrix<T>::identity(a.rows());
    for (unsigned i = 0; i < exponent; ++i)
        result = result * a;
    return result;
}

} // namespace fusionkz
