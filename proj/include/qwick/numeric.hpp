#ifndef QWICK_NUMERIC_HPP
#define QWICK_NUMERIC_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace qwick::num {

using cplx = std::complex<double>;

/// Raised when a Gram matrix stops being numerically positive definite
/// (the deformation parameter is too close to the unit circle for floats).
struct gram_error : std::runtime_error {
  explicit gram_error(const std::string& what) : std::runtime_error(what) {}
};

/// Lower-triangular Cholesky factor of a dense real symmetric matrix
/// (row-major, size n x n).  Throws gram_error on a non-positive pivot.
std::vector<double> chol_lower(const std::vector<double>& a, int n);

/// In-place forward solve L x = b and transposed solve L^T x = b for a
/// complex right-hand side against a real lower factor.
void solve_lower(const std::vector<double>& lower, int n, std::vector<cplx>& x);
void solve_lower_transposed(const std::vector<double>& lower, int n, std::vector<cplx>& x);

/// Largest singular value of a dense complex matrix (row-major rows x cols)
/// by power iteration on the normal matrix, deterministic start.
double sigma_max(const std::vector<cplx>& m, int rows, int cols, int max_iters = 4000,
                 double tol = 1e-13);

/// sigma_max of  Ldst^T * M * Lsrc^{-T}  without forming inverses; the
/// operator norm of M between spaces with Gram factors Lsrc, Ldst.
double conjugated_sigma_max(const std::vector<cplx>& m, int rows, int cols,
                            const std::vector<double>& lower_dst,
                            const std::vector<double>& lower_src);

/// All eigenvalues of a dense real symmetric matrix by cyclic Jacobi
/// rotations, ascending.  Meant for small matrices (oracles, projected
/// tridiagonals), not bulk linear algebra.
std::vector<double> sym_eigenvalues(std::vector<double> a, int n);

/// Smallest eigenvalue of a symmetric positive definite matrix from its
/// Cholesky factor, by inverse power iteration.
double spd_lambda_min(const std::vector<double>& lower, int n, int max_iters = 2000,
                      double tol = 1e-12);

/// Largest eigenvalue of a real symmetric tridiagonal matrix given its
/// diagonal and off-diagonal.
double tridiag_lambda_max(const std::vector<double>& diag, const std::vector<double>& off);

}  // namespace qwick::num

#endif
