#include "starlab/matrix.hpp"

#include "starlab/literal.hpp"

namespace starlab {

SeriesMatrix zero_series_matrix(std::size_t rows, std::size_t cols, int order)
{
    return SeriesMatrix(rows, cols, ScalarSeries(order, Scalar()));
}

SeriesMatrix identity_series_matrix(std::size_t n, int order)
{
    SeriesMatrix m = zero_series_matrix(n, n, order);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = scalar_series(order, Scalar(1));
    }
    return m;
}

ScalarMatrix zero_scalar_matrix(std::size_t rows, std::size_t cols)
{
    return ScalarMatrix(rows, cols, Scalar());
}

ScalarMatrix identity_scalar_matrix(std::size_t n)
{
    ScalarMatrix m = zero_scalar_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Scalar(1);
    }
    return m;
}

namespace {

int order_of(const SeriesMatrix &a, const SeriesMatrix &b)
{
    if (!a.empty()) {
        return a(0, 0).order();
    }
    if (!b.empty()) {
        return b(0, 0).order();
    }
    return 0;
}

} // namespace

SeriesMatrix multiply(const SeriesMatrix &a, const SeriesMatrix &b)
{
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ");
    }
    const int order = order_of(a, b);
    SeriesMatrix out = zero_series_matrix(a.rows(), b.cols(), order);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (!b(k, j).is_zero()) {
                    out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
    }
    return out;
}

ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b)
{
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ");
    }
    ScalarMatrix out = zero_scalar_matrix(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

SeriesMatrix adjoint(const SeriesMatrix &a)
{
    SeriesMatrix out(a.cols(), a.rows(), ScalarSeries());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = conj(a(i, j));
        }
    }
    return out;
}

ScalarMatrix adjoint(const ScalarMatrix &a)
{
    ScalarMatrix out(a.cols(), a.rows(), Scalar());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j).conj();
        }
    }
    return out;
}

SeriesMatrix subtract(const SeriesMatrix &a, const SeriesMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("matrix difference: shapes differ");
    }
    SeriesMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) -= b(i, j);
        }
    }
    return out;
}

ScalarMatrix subtract(const ScalarMatrix &a, const ScalarMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("matrix difference: shapes differ");
    }
    ScalarMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) -= b(i, j);
        }
    }
    return out;
}

SeriesVector mat_vec(const SeriesMatrix &a, const SeriesVector &v)
{
    if (a.cols() != v.size()) {
        throw ValidationError("matrix-vector product: dimensions differ");
    }
    const int order = !v.empty() ? v[0].order() : (a.empty() ? 0 : a(0, 0).order());
    SeriesVector out(a.rows(), ScalarSeries(order, Scalar()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero() && !v[j].is_zero()) {
                out[i] += a(i, j) * v[j];
            }
        }
    }
    return out;
}

ScalarVector mat_vec(const ScalarMatrix &a, const ScalarVector &v)
{
    if (a.cols() != v.size()) {
        throw ValidationError("matrix-vector product: dimensions differ");
    }
    ScalarVector out(a.rows(), Scalar());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

ScalarMatrix constant_part(const SeriesMatrix &a)
{
    ScalarMatrix out(a.rows(), a.cols(), Scalar());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j)[0];
        }
    }
    return out;
}

ScalarVector constant_part(const SeriesVector &v)
{
    ScalarVector out;
    out.reserve(v.size());
    for (const auto &s : v) {
        out.push_back(s[0]);
    }
    return out;
}

SeriesMatrix lift(const ScalarMatrix &a, int order)
{
    SeriesMatrix out(a.rows(), a.cols(), ScalarSeries(order, Scalar()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = scalar_series(order, a(i, j));
        }
    }
    return out;
}

SeriesVector lift(const ScalarVector &v, int order)
{
    SeriesVector out;
    out.reserve(v.size());
    for (const auto &s : v) {
        out.push_back(scalar_series(order, s));
    }
    return out;
}

bool is_zero(const SeriesMatrix &a)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool is_zero(const ScalarMatrix &a)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool is_zero(const SeriesVector &v)
{
    for (const auto &s : v) {
        if (!s.is_zero()) {
            return false;
        }
    }
    return true;
}

bool is_zero(const ScalarVector &v)
{
    for (const auto &s : v) {
        if (!s.is_zero()) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const SeriesMatrix &a)
{
    if (a.rows() != a.cols()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (!(a(j, i) == conj(a(i, j)))) {
                return false;
            }
        }
    }
    return true;
}

SeriesMatrix select(const SeriesMatrix &a, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols)
{
    SeriesMatrix out(rows.size(), cols.size(), ScalarSeries());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(i, j) = a(rows[i], cols[j]);
        }
    }
    return out;
}

SeriesMatrix block_diagonal(const std::vector<SeriesMatrix> &blocks, int order)
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto &b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    SeriesMatrix out = zero_series_matrix(rows, cols, order);
    std::size_t r0 = 0;
    std::size_t c0 = 0;
    for (const auto &b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                b(i, j).check_order(out(r0 + i, c0 + j));
                out(r0 + i, c0 + j) = b(i, j);
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

ScalarSeries inner(const SeriesVector &a, const SeriesVector &b)
{
    if (a.size() != b.size()) {
        throw ValidationError("inner product: dimensions differ");
    }
    if (a.empty()) {
        return ScalarSeries(0, Scalar());
    }
    ScalarSeries acc = a[0].zero_like();
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += conj(a[i]) * b[i];
    }
    return acc;
}

std::vector<std::vector<std::string>> to_strings(const SeriesMatrix &a)
{
    std::vector<std::vector<std::string>> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i].push_back(to_string(a(i, j)));
        }
    }
    return out;
}

std::vector<std::string> to_strings(const SeriesVector &v)
{
    std::vector<std::string> out;
    for (const auto &s : v) {
        out.push_back(to_string(s));
    }
    return out;
}

std::vector<std::vector<std::string>> to_strings(const ScalarMatrix &a)
{
    std::vector<std::vector<std::string>> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i].push_back(a(i, j).to_string());
        }
    }
    return out;
}

} // namespace starlab
