// linalg.hpp — small dense numerical kernels shared across the library.
//
// Everything here targets desk-scale problems (dimensions up to a few
// hundred): dense LU with partial pivoting, cyclic Jacobi eigendecomposition
// for symmetric matrices, Hermitian eigendecomposition through the real
// 2n-dimensional embedding, one-sided Jacobi SVD, least squares through the
// SVD, and a Durand-Kerner root finder for small complex polynomials.
// All routines are deterministic: no randomized pivoting or seeding.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spikes {

// Dense row-major matrix of doubles.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n);
    Mat transposed() const;
};

Mat operator*(const Mat& x, const Mat& y);
std::vector<double> operator*(const Mat& x, const std::vector<double>& v);

// y = A^T v
std::vector<double> mul_transpose(const Mat& x, const std::vector<double>& v);

double norm_inf(const std::vector<double>& v);
double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& x, const std::vector<double>& y);

// LU factorization with partial pivoting, PA = LU packed in place.
// `singular` is set when a pivot falls below an absolute threshold scaled
// by the largest entry of A.
struct LuFactors {
    Mat lu;                     // L below diagonal (unit), U on and above
    std::vector<std::size_t> perm;
    bool singular = false;
};

LuFactors lu_factor(const Mat& m);
std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b);
// Solves A^T x = b using the factorization of A.
std::vector<double> lu_solve_transposed(const LuFactors& f, const std::vector<double>& b);
Mat lu_inverse(const LuFactors& f);

// Cyclic Jacobi eigendecomposition of a symmetric matrix: A = V diag(w) V^T.
// Sweeps run until the off-diagonal Frobenius norm falls below
// off_tol * ||A||_F. Eigenvalues are returned in ascending order with
// matching columns of V.
struct SymEig {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column i pairs with values[i]
};

SymEig jacobi_eig(const Mat& sym, double off_tol = 1e-14, int max_sweeps = 64);

// Hermitian eigendecomposition via the real embedding [[Re, -Im], [Im, Re]].
// Input is an n x n complex Hermitian matrix (row-major). Each eigenvalue of
// the input appears twice in the embedding; values[] carries the n deduped
// eigenvalues ascending and vectors[] one complex unit eigenvector per value.
struct HermEig {
    std::vector<double> values;                          // ascending, size n
    std::vector<std::vector<std::complex<double>>> vectors;
};

HermEig hermitian_eig(const std::vector<std::complex<double>>& h, std::size_t n,
                      double off_tol = 1e-14);

// Solves the Hermitian system H x = b through the real embedding.
std::vector<std::complex<double>> hermitian_solve(const std::vector<std::complex<double>>& h,
                                                  std::size_t n,
                                                  const std::vector<std::complex<double>>& b);

// One-sided Jacobi SVD: returns singular values (descending), the right
// singular vectors V (columns), and the left vectors U for nonzero singular
// values. A = U diag(s) V^T with U m x k, V n x n, k = min(m, n).
struct Svd {
    std::vector<double> singular_values;  // descending, size min(m, n)
    Mat u;                                // m x min(m, n)
    Mat v;                                // n x n
};

Svd jacobi_svd(const Mat& m);

// Minimum-norm least squares through the SVD; singular values below
// rank_tol * s_max are treated as zero.
std::vector<double> least_squares(const Mat& m, const std::vector<double>& b,
                                  double rank_tol = 1e-12);

// Unit vector spanning (numerically) the kernel of A: the right singular
// vector of the smallest singular value. `ratio` receives s_min / s_max.
std::vector<double> kernel_vector(const Mat& m, double* ratio = nullptr);

// All complex roots of c[0] + c[1] z + ... + c[d] z^d by Durand-Kerner
// iteration. Leading/trailing coefficients below drop_tol * max|c| are
// trimmed first (trailing zeros contribute roots at z = 0). Deterministic
// initialization on a spiral.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs,
                                                   double drop_tol = 1e-13);

}  // namespace spikes
