#pragma once

#include "bcinv/real.hpp"

#include <cstddef>

namespace bcinv {

// Row-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const Real& fill = Real(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec col(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_col(std::size_t j, const Vec& v);

    Matrix transpose() const;
    Vec operator*(const Vec& x) const;
    Matrix operator*(const Matrix& b) const;

    const Vec& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec data_;
};

Real dot(const Vec& x, const Vec& y);
Real norm2(const Vec& x);
Real max_abs(const Vec& x);
void axpy(const Real& a, const Vec& x, Vec& y); // y += a x
Vec scaled(const Vec& x, const Real& a);

// Eigenvalues of the symmetric tridiagonal matrix (diag, offdiag).  Implicit
// QL with Wilkinson-type shift; at most `max_iter` sweeps per eigenvalue.
Vec tridiagonal_eigenvalues(const Vec& diag, const Vec& offdiag, int max_iter = 50);

struct SymEig {
    Vec values;     // ascending
    Matrix vectors; // column k belongs to values[k]
};

// Cyclic Jacobi.  Small matrices only; keeps high relative accuracy on graded
// positive definite input.
SymEig symmetric_eigen_jacobi(const Matrix& a);

// Householder reduction plus QL with vectors, for larger dense matrices.
SymEig symmetric_eigen(const Matrix& a);

struct Svd {
    Matrix u; // m x n
    Vec s;    // descending
    Matrix v; // n x n
};

// One-sided Jacobi SVD of an m x n matrix, m >= n.
Svd jacobi_svd(const Matrix& a);

// Gaussian elimination with partial pivoting; throws InvalidInput when singular.
Vec solve_linear(Matrix a, Vec b);

// Least-squares solution of min |Ax - b| by Householder QR, A is m x n with m >= n.
Vec least_squares(Matrix a, Vec b);

} // namespace bcinv
