#pragma once

#include "torickit/exactalg/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace torickit {

/// Dense row-major matrix over an exact ring (Integer or Rational).
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InputError("ragged matrix literal");
            for (long x : row) data_.emplace_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw InputError("column has wrong length");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != cols_) throw InputError("matrix-vector shape mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i) os << ", ";
            os << '[';
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (j) os << ", ";
                os << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

struct SmithForm {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix S;  // rows x cols, diagonal with d1 | d2 | ...
    IntMatrix V;  // cols x cols, unimodular
};

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += k * m(source, j);
}
inline void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += k * m(i, source);
}

}  // namespace detail

/// Smith normal form with transforms: U * M * V == S.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    const std::size_t rows = M.rows(), cols = M.cols();
    IntMatrix S = M;
    IntMatrix U = IntMatrix::identity(rows);
    IntMatrix V = IntMatrix::identity(cols);
    const std::size_t diag = std::min(rows, cols);

    for (std::size_t t = 0; t < diag; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (S(i, j) != 0 && (!best || abs(S(i, j)) < abs(S(best->first, best->second))))
                        best = {i, j};
            if (!best) break;
            if (best->first != t) {
                S.swap_rows(t, best->first);
                U.swap_rows(t, best->first);
            }
            if (best->second != t) {
                S.swap_cols(t, best->second);
                V.swap_cols(t, best->second);
            }

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (S(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                detail::add_row_multiple(S, i, t, -q);
                detail::add_row_multiple(U, i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (S(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                detail::add_col_multiple(S, j, t, -q);
                detail::add_col_multiple(V, j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: pull a non-divisible entry into row t and go again
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < rows && !offender; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        offender = i;
                        break;
                    }
            if (!offender) break;
            detail::add_row_multiple(S, t, *offender, 1);
            detail::add_row_multiple(U, t, *offender, 1);
        }
        if (S(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) S(t, j) = -S(t, j);
            for (std::size_t j = 0; j < rows; ++j) U(t, j) = -U(t, j);
        }
    }
    return {std::move(U), std::move(S), std::move(V)};
}

/// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix c = m;
    return row_reduce(c).size();
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Exact solution of A x = b; std::nullopt when b is outside the column span.
/// Free variables are set to zero.
inline std::optional<RatVector> rational_solve(const RatMatrix& A, const RatVector& b) {
    if (b.size() != A.rows()) throw InputError("rational_solve: right-hand side has wrong length");
    RatMatrix aug(A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    const auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
    RatVector x(A.cols(), Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, A.cols());
    return x;
}

inline std::optional<RatVector> rational_solve(const IntMatrix& A, const RatVector& b) {
    return rational_solve(to_rational(A), b);
}

inline Rational determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            const Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline Integer determinant(const IntMatrix& m) {
    const Rational d = determinant(to_rational(m));
    return d.get_num();
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Basis of the right kernel {x : m x = 0}.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    RatMatrix r = m;
    const auto pivots = row_reduce(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace torickit
