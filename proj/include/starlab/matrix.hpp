#pragma once

#include "starlab/error.hpp"
#include "starlab/scalar.hpp"
#include "starlab/series.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace starlab {

// Small dense row-major matrix. Sizes here are tens, not thousands.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c.push_back((*this)(i, j));
        }
        return c;
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;
using SeriesMatrix = Matrix<ScalarSeries>;
using ScalarVector = std::vector<Scalar>;
using SeriesVector = std::vector<ScalarSeries>;

SeriesMatrix zero_series_matrix(std::size_t rows, std::size_t cols, int order);
SeriesMatrix identity_series_matrix(std::size_t n, int order);
ScalarMatrix zero_scalar_matrix(std::size_t rows, std::size_t cols);
ScalarMatrix identity_scalar_matrix(std::size_t n);

SeriesMatrix multiply(const SeriesMatrix &a, const SeriesMatrix &b);
ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b);
// Conjugate transpose.
SeriesMatrix adjoint(const SeriesMatrix &a);
ScalarMatrix adjoint(const ScalarMatrix &a);
SeriesMatrix subtract(const SeriesMatrix &a, const SeriesMatrix &b);
ScalarMatrix subtract(const ScalarMatrix &a, const ScalarMatrix &b);

SeriesVector mat_vec(const SeriesMatrix &a, const SeriesVector &v);
ScalarVector mat_vec(const ScalarMatrix &a, const ScalarVector &v);

// Order-0 coefficient matrix.
ScalarMatrix constant_part(const SeriesMatrix &a);
ScalarVector constant_part(const SeriesVector &v);
// Constant-in-l extension to the given order.
SeriesMatrix lift(const ScalarMatrix &a, int order);
SeriesVector lift(const ScalarVector &v, int order);

bool is_zero(const SeriesMatrix &a);
bool is_zero(const ScalarMatrix &a);
bool is_zero(const SeriesVector &v);
bool is_zero(const ScalarVector &v);
bool is_hermitian(const SeriesMatrix &a);

// Submatrix on the given row and column index lists.
SeriesMatrix select(const SeriesMatrix &a, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols);

// Block diagonal assembly; `order` is used when every block is empty.
SeriesMatrix block_diagonal(const std::vector<SeriesMatrix> &blocks, int order);

// Conjugate-linear in the first argument.
ScalarSeries inner(const SeriesVector &a, const SeriesVector &b);

std::vector<std::vector<std::string>> to_strings(const SeriesMatrix &a);
std::vector<std::string> to_strings(const SeriesVector &v);
std::vector<std::vector<std::string>> to_strings(const ScalarMatrix &a);

} // namespace starlab
