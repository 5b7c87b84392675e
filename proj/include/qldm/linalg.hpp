#pragma once

#include <cstddef>
#include <vector>

namespace qldm {

// Row-major dense matrix of doubles. Sized for the small problems in this
// project (Jacobians up to a few hundred columns, covariance matrices up to
// the latent dimension); no BLAS behind it.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v[i * cols + j]; }

    static Matrix identity(std::size_t n);
};

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);

// y = m^T x  (x has m.rows entries, result has m.cols)
std::vector<double> matvec_transposed(const Matrix& m, const std::vector<double>& x);

Matrix matmul(const Matrix& a, const Matrix& b);

// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
// Returns eigenvalues ascending; columns of `vectors` are the matching
// eigenvectors. Input symmetry is the caller's responsibility.
void eigh_sym(const Matrix& a, std::vector<double>& values, Matrix& vectors);

}  // namespace qldm
