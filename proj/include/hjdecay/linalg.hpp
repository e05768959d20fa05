#pragma once

#include "hjdecay/common.hpp"

namespace hjd {

/// Dense row-major matrix, sized for n <= 3 domain work but not restricted to it.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat transposed() const
    {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec apply(const Vec& x) const
    {
        Vec y(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }
};

Mat mat_mul(const Mat& A, const Mat& B);

/// Gaussian elimination with partial pivoting. Throws invalid_input on a
/// numerically singular system.
Vec solve_linear(Mat A, Vec b);

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
/// Returns eigenvalues ascending; `vectors` columns are the matching eigenvectors.
struct SymEigen {
    Vec values;
    Mat vectors;
};
SymEigen sym_eigen(const Mat& A);

/// Moore-Penrose pseudo-inverse of a symmetric PSD matrix, plus an orthonormal
/// basis of its range (eigenvalue > rel_tol * max eigenvalue).
struct PsdDecomposition {
    Mat pinv;
    std::vector<Vec> range_basis;
    std::vector<Vec> kernel_basis;
    double eig_min = 0.0;
    double eig_max = 0.0;
};
PsdDecomposition psd_decompose(const Mat& A, double rel_tol = 1e-10);

} // namespace hjd
