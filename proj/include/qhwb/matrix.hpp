#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qhwb/error.hpp"
#include "qhwb/poly.hpp"

namespace qhwb {

/// Dense row-major matrix over an exact field.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(const std::vector<std::vector<F>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<F> column(std::size_t j) const
    {
        std::vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    F trace() const
    {
        F t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.rows_)
            raise(Errc::DimensionMismatch, "matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const F& v = x(i, k);
                if (is_zero(v))
                    continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r(i, j) += v * y(k, j);
            }
        return r;
    }

    friend Matrix operator-(Matrix x, const Matrix& y)
    {
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            x.a_[i] = x.a_[i] - y.a_[i];
        return x;
    }

    friend Matrix operator+(Matrix x, const Matrix& y)
    {
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            x.a_[i] = x.a_[i] + y.a_[i];
        return x;
    }

    friend Matrix operator*(const F& s, Matrix x)
    {
        for (auto& v : x.a_)
            v = s * v;
        return x;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::vector<F> apply(const std::vector<F>& v) const
    {
        std::vector<F> r(rows_, F(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(v[j]))
                    r[i] += (*this)(i, j) * v[j];
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

/// Reduced row echelon form together with its pivot columns.
template <class F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;
};

template <class F>
Echelon<F> row_reduce(Matrix<F> m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        const F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            const F f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m)
{
    return row_reduce(m).pivots.size();
}

template <class F>
F determinant(Matrix<F> m)
{
    if (m.rows() != m.cols())
        raise(Errc::DimensionMismatch, "determinant of a non-square matrix");
    F det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c)))
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        const F inv = F(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c)))
                continue;
            const F f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return det;
}

/// Basis of the null space {v : m v = 0}.
template <class F>
std::vector<std::vector<F>> kernel(const Matrix<F>& m)
{
    auto [r, pivots] = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<F> v(m.cols(), F(0));
        v[f] = F(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// A maximal linearly independent subset of the columns (as vectors).
template <class F>
std::vector<std::vector<F>> column_space(const Matrix<F>& m)
{
    std::vector<std::vector<F>> basis;
    for (auto p : row_reduce(m).pivots)
        basis.push_back(m.column(p));
    return basis;
}

/// Solves m x = b for a consistent system; throws when inconsistent.
template <class F>
std::vector<F> solve(const Matrix<F>& m, const std::vector<F>& b)
{
    Matrix<F> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [r, pivots] = row_reduce(std::move(aug));
    std::vector<F> x(m.cols(), F(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == m.cols())
            raise(Errc::InvalidArgument, "inconsistent linear system");
        x[pivots[i]] = r(i, m.cols());
    }
    return x;
}

/// Minimal polynomial of a square matrix (monic), found as the first linear
/// dependency among I, A, A^2, ...
template <class F>
Poly<F> minimal_polynomial(const Matrix<F>& a)
{
    const std::size_t n = a.rows();
    std::vector<Matrix<F>> powers{Matrix<F>::identity(n)};
    for (std::size_t k = 1; k <= n; ++k) {
        powers.push_back(powers.back() * a);
        // Columns: vec(A^0) ... vec(A^k); look for a relation with A^k coefficient 1.
        Matrix<F> sys(n * n, k);
        std::vector<F> rhs(n * n);
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sys(i * n + j, p) = powers[p](i, j);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rhs[i * n + j] = -powers[k](i, j);
        Matrix<F> aug(n * n, k + 1);
        for (std::size_t i = 0; i < n * n; ++i) {
            for (std::size_t p = 0; p < k; ++p)
                aug(i, p) = sys(i, p);
            aug(i, k) = rhs[i];
        }
        auto [r, pivots] = row_reduce(std::move(aug));
        if (!pivots.empty() && pivots.back() == k)
            continue;
        std::vector<F> coeffs(k + 1, F(0));
        for (std::size_t i = 0; i < pivots.size(); ++i)
            coeffs[pivots[i]] = r(i, k);
        coeffs[k] = F(1);
        return Poly<F>(std::move(coeffs));
    }
    raise(Errc::AssertionFailed, "minimal polynomial search exceeded the matrix size");
}

} // namespace qhwb
