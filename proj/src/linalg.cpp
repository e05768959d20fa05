#include "hjdecay/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace hjd {

Mat mat_mul(const Mat& A, const Mat& B)
{
    if (A.cols != B.rows) throw invalid_input("mat_mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const double aik = A(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

Vec solve_linear(Mat A, Vec b)
{
    const std::size_t n = A.rows;
    if (A.cols != n || b.size() != n) throw invalid_input("solve_linear: shape mismatch");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(A(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(A(perm[r], col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-300) throw invalid_input("solve_linear: singular matrix");
        std::swap(perm[col], perm[piv]);
        const double diag = A(perm[col], col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A(perm[r], col) / diag;
            if (f == 0.0) continue;
            A(perm[r], col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) A(perm[r], c) -= f * A(perm[col], c);
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (std::size_t c = i + 1; c < n; ++c) s -= A(perm[i], c) * x[c];
        x[i] = s / A(perm[i], i);
    }
    return x;
}

SymEigen sym_eigen(const Mat& A)
{
    const std::size_t n = A.rows;
    if (A.cols != n) throw invalid_input("sym_eigen: matrix not square");
    Mat M = A;
    // symmetrize to be safe against tiny asymmetries from upstream arithmetic
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (M(i, j) + M(j, i));
            M(i, j) = M(j, i) = avg;
        }
    Mat V = Mat::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += M(i, j) * M(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(M(p, q)) < 1e-300) continue;
                const double theta = (M(q, q) - M(p, p)) / (2.0 * M(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = M(k, p), mkq = M(k, q);
                    M(k, p) = c * mkp - s * mkq;
                    M(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = M(p, k), mqk = M(q, k);
                    M(p, k) = c * mpk - s * mqk;
                    M(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return M(i, i) < M(j, j); });

    SymEigen out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = M(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[j]);
    }
    return out;
}

PsdDecomposition psd_decompose(const Mat& A, double rel_tol)
{
    const std::size_t n = A.rows;
    SymEigen eig = sym_eigen(A);
    PsdDecomposition out;
    out.eig_min = eig.values.front();
    out.eig_max = eig.values.back();
    const double cut = rel_tol * std::max(1e-300, std::abs(out.eig_max));
    out.pinv = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, k);
        if (eig.values[k] > cut) {
            out.range_basis.push_back(v);
            const double inv = 1.0 / eig.values[k];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) out.pinv(i, j) += inv * v[i] * v[j];
        } else {
            out.kernel_basis.push_back(v);
        }
    }
    return out;
}

} // namespace hjd
